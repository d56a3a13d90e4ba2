use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ring::Exps;

/// q-degree bounds for materializing k-linear pieces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub qmin: i64,
    pub qmax: i64,
    /// Maximal degree of an operator chain used in a computation.
    pub margin: i64,
}

impl Window {
    pub fn margin_for(n: usize) -> i64 {
        4.max(2 * n as i64)
    }

    /// Default: 24 above the top generator, one margin below the bottom one.
    pub fn around(gen_min: i64, gen_max: i64, n: usize) -> Window {
        let margin = Window::margin_for(n);
        Window { qmin: gen_min - margin, qmax: gen_max + 24, margin }
    }

    pub fn new(qmin: i64, qmax: i64, n: usize) -> Result<Window> {
        if qmin > qmax {
            return Err(Error::Window(format!("qmin {qmin} > qmax {qmax}")));
        }
        Ok(Window { qmin, qmax, margin: Window::margin_for(n) })
    }

    pub fn contains(&self, q: i64) -> bool {
        self.qmin <= q && q <= self.qmax
    }

    /// Sub-window where every operator chain of length ≤ 2 stays inside.
    pub fn certified(&self) -> (i64, i64) {
        (self.qmin + self.margin, self.qmax - self.margin)
    }

    pub fn is_certified(&self, q: i64) -> bool {
        let (a, b) = self.certified();
        a <= q && q <= b
    }
}

/// Monomials of `k[E_1..E_N]` of degree `d` (`deg E_i = 2i`), in a fixed order.
pub fn monomials(n: usize, d: i64) -> Vec<Exps> {
    let mut out = Vec::new();
    if d < 0 || d % 2 != 0 {
        return out;
    }
    let mut cur: Vec<u8> = vec![0; n];
    fn rec(i: usize, left: i64, n: usize, cur: &mut Vec<u8>, out: &mut Vec<Exps>) {
        if i == n {
            if left == 0 {
                let mut e: Exps = SmallVec::from_slice(cur);
                while e.last() == Some(&0) {
                    e.pop();
                }
                out.push(e);
            }
            return;
        }
        let w = 2 * (i as i64 + 1);
        let mut k = 0;
        while k as i64 * w <= left {
            cur[i] = k;
            rec(i + 1, left - k as i64 * w, n, cur, out);
            k += 1;
        }
        cur[i] = 0;
    }
    if n == 0 {
        if d == 0 {
            out.push(SmallVec::new());
        }
        return out;
    }
    rec(0, d, n, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monomial_counts() {
        // N = 2: 1/((1-q^2)(1-q^4))
        let counts: Vec<usize> = (0..6).map(|m| monomials(2, 2 * m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 2, 3, 3]);
        assert!(monomials(2, 3).is_empty());
        assert_eq!(monomials(3, 6).len(), 3);
    }
}
