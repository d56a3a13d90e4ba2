use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// Integer Laurent polynomial in `q`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentQ {
    c: BTreeMap<i64, i64>,
}

impl LaurentQ {
    pub fn zero() -> LaurentQ {
        LaurentQ::default()
    }

    pub fn one() -> LaurentQ {
        LaurentQ::mono(1, 0)
    }

    /// `a q^k`.
    pub fn mono(a: i64, k: i64) -> LaurentQ {
        let mut r = LaurentQ::zero();
        r.add_term(k, a);
        r
    }

    pub fn from_coeffs(pairs: impl IntoIterator<Item = (i64, i64)>) -> LaurentQ {
        let mut r = LaurentQ::zero();
        for (k, a) in pairs {
            r.add_term(k, a);
        }
        r
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn add_term(&mut self, k: i64, a: i64) {
        if a == 0 {
            return;
        }
        let e = self.c.entry(k).or_insert(0);
        *e = e.checked_add(a).expect("Laurent coefficient overflow");
        if *e == 0 {
            self.c.remove(&k);
        }
    }

    pub fn coeff(&self, k: i64) -> i64 {
        self.c.get(&k).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.c.iter().map(|(&k, &a)| (k, a))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.c.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.c.keys().next_back().copied()
    }

    pub fn add(&self, o: &LaurentQ) -> LaurentQ {
        let mut r = self.clone();
        for (k, a) in o.terms() {
            r.add_term(k, a);
        }
        r
    }

    pub fn neg(&self) -> LaurentQ {
        LaurentQ { c: self.c.iter().map(|(&k, &a)| (k, -a)).collect() }
    }

    pub fn sub(&self, o: &LaurentQ) -> LaurentQ {
        self.add(&o.neg())
    }

    pub fn scale(&self, s: i64) -> LaurentQ {
        LaurentQ::from_coeffs(self.terms().map(|(k, a)| (k, a * s)))
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> LaurentQ {
        LaurentQ { c: self.c.iter().map(|(&e, &a)| (e + k, a)).collect() }
    }

    pub fn mul(&self, o: &LaurentQ) -> LaurentQ {
        let mut r = LaurentQ::zero();
        for (k, a) in self.terms() {
            for (l, b) in o.terms() {
                r.add_term(k + l, a.checked_mul(b).expect("Laurent coefficient overflow"));
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> LaurentQ {
        (0..n).fold(LaurentQ::one(), |acc, _| acc.mul(self))
    }

    /// `q ↦ q^{-1}`.
    pub fn bar(&self) -> LaurentQ {
        LaurentQ { c: self.c.iter().map(|(&k, &a)| (-k, a)).collect() }
    }

    /// Exact division; errors if a remainder is left.
    pub fn div_exact(&self, d: &LaurentQ) -> Result<LaurentQ> {
        let (dlo, dhi) = match (d.min_degree(), d.max_degree()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(Error::DivisionByZero),
        };
        let lead = d.coeff(dhi);
        let mut rem = self.clone();
        let mut quo = LaurentQ::zero();
        while let Some(top) = rem.max_degree() {
            if top - dhi < rem.min_degree().unwrap() - dlo {
                break;
            }
            let a = rem.coeff(top);
            if a % lead != 0 {
                return Err(Error::InexactDivision(format!("{self:?} / {d:?}")));
            }
            let t = LaurentQ::mono(a / lead, top - dhi);
            quo = quo.add(&t);
            rem = rem.sub(&t.mul(d));
        }
        if !rem.is_zero() {
            return Err(Error::InexactDivision(format!("{self:?} / {d:?}")));
        }
        Ok(quo)
    }

    /// Coefficient list `[(exponent, coefficient)]`, exponents ascending.
    pub fn to_pairs(&self) -> Vec<(i64, i64)> {
        self.terms().collect()
    }

    /// Power-series coefficients of `self / ∏_{i=1}^n (1 - q^{2i})` for exponents `≤ top`.
    pub fn series_over_ring(&self, n: usize, top: i64) -> BTreeMap<i64, i64> {
        let mut s: BTreeMap<i64, i64> = self.terms().filter(|(k, _)| *k <= top).collect();
        for i in 1..=n as i64 {
            let step = 2 * i;
            let keys: Vec<i64> = s.keys().copied().collect();
            let lo = match keys.first() {
                Some(&k) => k,
                None => break,
            };
            let mut out: BTreeMap<i64, i64> = BTreeMap::new();
            let mut k = lo;
            while k <= top {
                let prev = if k - step >= lo { out.get(&(k - step)).copied().unwrap_or(0) } else { 0 };
                let v = s.get(&k).copied().unwrap_or(0) + prev;
                if v != 0 {
                    out.insert(k, v);
                }
                k += 1;
            }
            s = out;
        }
        s.retain(|_, v| *v != 0);
        s
    }
}

impl fmt::Debug for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms().map(|(k, a)| format!("{a}q^{k}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `[n] = (q^n - q^{-n})/(q - q^{-1})`.
pub fn quantum_int(n: i64) -> LaurentQ {
    if n == 0 {
        return LaurentQ::zero();
    }
    let m = n.abs();
    let s = n.signum();
    LaurentQ::from_coeffs((0..m).map(|i| (m - 1 - 2 * i, s)))
}

/// `[n]! = [1][2]…[n]`.
pub fn quantum_factorial(n: u32) -> LaurentQ {
    (1..=n as i64).fold(LaurentQ::one(), |acc, i| acc.mul(&quantum_int(i)))
}

/// `∏_{i=1}^a [m+1-i]/[i]`, computed by exact division.
pub fn qbinom(m: i64, a: u32) -> Result<LaurentQ> {
    let mut num = LaurentQ::one();
    for i in 1..=a as i64 {
        num = num.mul(&quantum_int(m + 1 - i));
    }
    num.div_exact(&quantum_factorial(a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_ints() {
        assert_eq!(quantum_int(2), LaurentQ::from_coeffs([(1, 1), (-1, 1)]));
        assert!(quantum_int(0).is_zero());
        assert_eq!(quantum_int(-3), LaurentQ::from_coeffs([(2, -1), (0, -1), (-2, -1)]));
        for n in -6..7 {
            assert_eq!(quantum_int(n), quantum_int(n).bar());
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(qbinom(2, 1).unwrap(), quantum_int(2));
        for n in 0..6 {
            assert_eq!(qbinom(n, n as u32).unwrap(), LaurentQ::one());
        }
        // [4][3]/([2][1]) expanded by hand
        let expect = LaurentQ::from_coeffs([(4, 1), (2, 1), (0, 2), (-2, 1), (-4, 1)]);
        assert_eq!(qbinom(4, 2).unwrap(), expect);
    }

    #[test]
    fn inexact_division_signals() {
        assert!(quantum_int(3).div_exact(&quantum_int(2)).is_err());
    }

    #[test]
    fn series_of_unknot() {
        // [2] / ((1-q^2)(1-q^4)) = q^{-1}/(1-q^2)^2
        let s = quantum_int(2).series_over_ring(2, 9);
        let expect: BTreeMap<i64, i64> = (0..=5).map(|n| (2 * n - 1, n + 1)).collect();
        assert_eq!(s, expect);
    }
}
