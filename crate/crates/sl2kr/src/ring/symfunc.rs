use super::poly::{Alphabet, Exps, Poly};
use super::scalar::Field;
use crate::error::Result;
#[cfg(test)]
use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymBasis {
    E,
    H,
    P,
}

/// Symmetric function in `size` variables, stored as a polynomial in the generators
/// `g_1..g_size` of the chosen basis (variable `i-1` is `g_i`, of degree `2i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymFunc {
    pub size: usize,
    pub basis: SymBasis,
    pub poly: Poly,
    pub field: Field,
}

impl SymFunc {
    pub fn generator(basis: SymBasis, i: usize, size: usize, field: Field) -> SymFunc {
        let poly = if i == 0 {
            Poly::one(&field)
        } else if i > size && basis == SymBasis::E {
            Poly::zero()
        } else {
            // h_i, p_i with i > size are not generators; express them in the e-basis first
            if i > size {
                let e = SymFunc { size, basis: SymBasis::E, poly: express_in_e(basis, i, size, &field), field };
                return e.convert(basis).expect("generator conversion");
            }
            Poly::var(i - 1, &field)
        };
        SymFunc { size, basis, poly, field }
    }

    pub fn alphabet(&self) -> Alphabet {
        let pre = match self.basis {
            SymBasis::E => "e",
            SymBasis::H => "h",
            SymBasis::P => "p",
        };
        Alphabet {
            names: (1..=self.size).map(|i| format!("{pre}{i}")).collect(),
            weights: (1..=self.size as i64).map(|i| 2 * i).collect(),
        }
    }

    /// Re-express in another basis. The p-basis fails when the characteristic divides `k ≤ size`.
    pub fn convert(&self, target: SymBasis) -> Result<SymFunc> {
        if target == self.basis {
            return Ok(self.clone());
        }
        let f = &self.field;
        let to_e: Vec<Poly> = (1..=self.size).map(|i| express_in_e(self.basis, i, self.size, f)).collect();
        let in_e = self.poly.subst(&to_e, f);
        let from_e: Vec<Poly> = (1..=self.size)
            .map(|i| express_e_in(target, i, self.size, f))
            .collect::<Result<_>>()?;
        Ok(SymFunc { size: self.size, basis: target, poly: in_e.subst(&from_e, f), field: *f })
    }

    /// Expansion in explicit variables `x_1..x_size`.
    pub fn expand(&self) -> Poly {
        let f = &self.field;
        let gens: Vec<Poly> = (1..=self.size).map(|i| explicit(self.basis, i, self.size, f)).collect();
        self.poly.subst(&gens, f)
    }
}

/// Classical conversion of SymFunc between bases.
pub fn newton_convert(f: &SymFunc, target: SymBasis) -> Result<SymFunc> {
    f.convert(target)
}

/// Elementary symmetric polynomial `e_k(x_1..x_a)` in explicit variables.
pub fn elementary(k: usize, a: usize, f: &Field) -> Poly {
    let mut r = Poly::zero();
    if k > a {
        return r;
    }
    for mask in 0u32..(1 << a) {
        if mask.count_ones() as usize == k {
            let e: Exps = (0..a).map(|i| ((mask >> i) & 1) as u8).collect();
            r.add_term(e, f.one());
        }
    }
    r
}

fn explicit(b: SymBasis, k: usize, a: usize, f: &Field) -> Poly {
    match b {
        SymBasis::E => elementary(k, a, f),
        SymBasis::P => {
            let mut r = Poly::zero();
            for i in 0..a {
                let mut e: Exps = smallvec::SmallVec::from_elem(0, a);
                e[i] = k as u8;
                r.add_term(e, f.one());
            }
            r
        }
        SymBasis::H => {
            let mut r = Poly::zero();
            let mut e: Exps = smallvec::SmallVec::from_elem(0, a);
            complete(&mut e, 0, k, &mut r, f);
            r
        }
    }
}

fn complete(e: &mut Exps, i: usize, left: usize, r: &mut Poly, f: &Field) {
    if i + 1 == e.len() {
        e[i] = left as u8;
        r.add_term(e.clone(), f.one());
        e[i] = 0;
        return;
    }
    for k in 0..=left {
        e[i] = k as u8;
        complete(e, i + 1, left - k, r, f);
    }
    e[i] = 0;
}

/// Generator `g_k` of basis `b`, written in `e_1..e_a` (e-variables are `0..a`).
fn express_in_e(b: SymBasis, k: usize, a: usize, f: &Field) -> Poly {
    let e = |i: usize| if i == 0 { Poly::one(f) } else if i > a { Poly::zero() } else { Poly::var(i - 1, f) };
    match b {
        SymBasis::E => e(k),
        SymBasis::H => {
            // h_k = Σ_{j=1}^k (-1)^{j-1} e_j h_{k-j}
            let mut hs = vec![Poly::one(f)];
            for m in 1..=k {
                let mut s = Poly::zero();
                for j in 1..=m {
                    let t = e(j).mul(&hs[m - j]);
                    s = if j % 2 == 1 { s.add(&t) } else { s.sub(&t) };
                }
                hs.push(s);
            }
            hs[k].clone()
        }
        SymBasis::P => {
            // p_m = Σ_{i=1}^{m-1} (-1)^{i-1} e_i p_{m-i} + (-1)^{m-1} m e_m
            let mut ps = vec![Poly::zero()];
            for m in 1..=k {
                let mut s = Poly::zero();
                for i in 1..m {
                    let t = e(i).mul(&ps[m - i]);
                    s = if i % 2 == 1 { s.add(&t) } else { s.sub(&t) };
                }
                let t = e(m).scale(&f.int(m as i64));
                s = if m % 2 == 1 { s.add(&t) } else { s.sub(&t) };
                ps.push(s);
            }
            ps[k].clone()
        }
    }
}

/// `e_k` written in the generators of basis `b`.
fn express_e_in(b: SymBasis, k: usize, _a: usize, f: &Field) -> Result<Poly> {
    let g = |i: usize| Poly::var(i - 1, f);
    match b {
        SymBasis::E => Ok(g(k)),
        SymBasis::H => {
            // e_m = Σ_{j=1}^m (-1)^{j-1} h_j e_{m-j}
            let mut es = vec![Poly::one(f)];
            for m in 1..=k {
                let mut s = Poly::zero();
                for j in 1..=m {
                    let t = g(j).mul(&es[m - j]);
                    s = if j % 2 == 1 { s.add(&t) } else { s.sub(&t) };
                }
                es.push(s);
            }
            Ok(es[k].clone())
        }
        SymBasis::P => {
            // m e_m = Σ_{i=1}^m (-1)^{i-1} e_{m-i} p_i
            let mut es = vec![Poly::one(f)];
            for m in 1..=k {
                let mut s = Poly::zero();
                for i in 1..=m {
                    let t = es[m - i].mul(&g(i));
                    s = if i % 2 == 1 { s.add(&t) } else { s.sub(&t) };
                }
                let inv = f.frac(1, m as i64)?;
                es.push(s.scale(&inv));
            }
            Ok(es[k].clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    #[test]
    fn p1_is_e1() {
        let p1 = SymFunc::generator(SymBasis::P, 1, 2, q());
        let e = p1.convert(SymBasis::E).unwrap();
        assert_eq!(e.poly, Poly::var(0, &q()));
    }

    #[test]
    fn p2_in_e() {
        let p2 = SymFunc::generator(SymBasis::P, 2, 2, q());
        let e = p2.convert(SymBasis::E).unwrap();
        let e1 = Poly::var(0, &q());
        let e2 = Poly::var(1, &q());
        assert_eq!(e.poly, e1.mul(&e1).sub(&e2.scale(&q().int(2))));
    }

    #[test]
    fn e2_in_p() {
        let e2 = SymFunc::generator(SymBasis::E, 2, 2, q());
        let p = e2.convert(SymBasis::P).unwrap();
        let p1 = Poly::var(0, &q());
        let p2 = Poly::var(1, &q());
        let half = q().frac(1, 2).unwrap();
        assert_eq!(p.poly, p1.mul(&p1).sub(&p2).scale(&half));
    }

    #[test]
    fn p_basis_rejected_in_small_characteristic() {
        let f = Field::Prime(3);
        let e3 = SymFunc::generator(SymBasis::E, 3, 3, f);
        assert_eq!(e3.convert(SymBasis::P), Err(Error::Characteristic(3)));
    }

    #[test]
    fn round_trip_and_expansion() {
        for a in 1..=4 {
            for b in [SymBasis::E, SymBasis::H, SymBasis::P] {
                for k in 1..=a {
                    let g = SymFunc::generator(b, k, a, q());
                    for t in [SymBasis::E, SymBasis::H, SymBasis::P] {
                        let c = g.convert(t).unwrap();
                        assert_eq!(c.expand(), g.expand(), "{b:?}{k} -> {t:?}, a={a}");
                        assert_eq!(c.convert(b).unwrap().poly, g.poly);
                    }
                }
            }
        }
    }
}
