use std::collections::HashMap;
use std::sync::Mutex;

use smallvec::SmallVec;

use crate::ring::{base_alphabet, base_images, Alphabet, Exps, Field, Poly, Sl2};

/// One generator of a tower ring: `v^deg = rel`, with `rel` reduced in `v` and using only
/// earlier generators.
#[derive(Clone, Debug)]
pub struct TowerVar {
    pub name: String,
    pub deg: u8,
    pub rel: Poly,
}

/// `k[E_1..E_N][v_1..v_m] / (monic relations)`, a free `k[E]`-module with monomial basis.
/// Variable `j < N` of a polynomial is `E_{j+1}`; variable `N + i` is `v_{i+1}`.
/// Every generator is an edge variable: it behaves like one of the roots `X_i`.
#[derive(Debug)]
pub struct Tower {
    pub field: Field,
    pub n: usize,
    pub vars: Vec<TowerVar>,
    basis: Vec<Exps>,
    index: HashMap<Exps, usize>,
    cache: Mutex<HashMap<Exps, Poly>>,
}

impl Tower {
    pub fn new(field: Field, n: usize, vars: Vec<TowerVar>) -> Tower {
        let mut basis: Vec<Exps> = vec![SmallVec::new()];
        for (i, v) in vars.iter().enumerate() {
            let mut next = Vec::new();
            for b in &basis {
                for k in 0..v.deg {
                    let mut e = b.clone();
                    if e.len() < n + i + 1 {
                        e.resize(n + i + 1, 0);
                    }
                    e[n + i] = k;
                    next.push(trimmed(e));
                }
            }
            basis = next;
        }
        basis.sort_by_key(|e| (e.iter().map(|&k| k as u32).sum::<u32>(), pad_rev(e, n + vars.len())));
        let index = basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Tower { field, n, vars, basis, index, cache: Mutex::new(HashMap::new()) }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Exps] {
        &self.basis
    }

    /// Polynomial degree (twice the total exponent) of basis element `j`.
    pub fn basis_degree(&self, j: usize) -> i64 {
        2 * self.basis[j].iter().map(|&k| k as i64).sum::<i64>()
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.n + i, &self.field)
    }

    pub fn e(&self, i: usize) -> Poly {
        match i {
            0 => Poly::one(&self.field),
            i if i > self.n => Poly::zero(),
            i => Poly::var(i - 1, &self.field),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        let mut a = base_alphabet(self.n);
        for v in &self.vars {
            a.names.push(v.name.clone());
            a.weights.push(2);
        }
        a
    }

    fn split(&self, e: &Exps) -> (Exps, Exps) {
        let base: Exps = trimmed(e.iter().take(self.n).copied().collect());
        let mut top: Exps = e.clone();
        for k in top.iter_mut().take(self.n) {
            *k = 0;
        }
        (base, trimmed(top))
    }

    fn in_bounds(&self, top: &Exps) -> bool {
        self.vars.iter().enumerate().all(|(i, v)| top.get(self.n + i).copied().unwrap_or(0) < v.deg)
    }

    fn reduce_mono(&self, top: &Exps) -> Poly {
        if self.in_bounds(top) {
            return Poly::monomial(top.clone(), self.field.one());
        }
        if let Some(p) = self.cache.lock().unwrap().get(top) {
            return p.clone();
        }
        let i = (0..self.vars.len())
            .rev()
            .find(|&i| top.get(self.n + i).copied().unwrap_or(0) >= self.vars[i].deg)
            .unwrap();
        let mut rest = top.clone();
        rest[self.n + i] -= self.vars[i].deg;
        let prod = self.vars[i].rel.mul(&Poly::monomial(rest, self.field.one()));
        let r = self.reduce(&prod);
        self.cache.lock().unwrap().insert(top.clone(), r.clone());
        r
    }

    /// Normal form.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in p.terms() {
            let (base, top) = self.split(e);
            if self.in_bounds(&top) {
                out.add_term(e.clone(), c.clone());
            } else {
                out.add_scaled_shifted(&self.reduce_mono(&top), c, &base);
            }
        }
        out
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&a.mul(b))
    }

    /// Coordinates over `k[E]` in the monomial basis (input must be reduced).
    pub fn coords(&self, p: &Poly) -> Vec<Poly> {
        let mut v = vec![Poly::zero(); self.rank()];
        for (e, c) in p.terms() {
            let (base, top) = self.split(e);
            let j = *self.index.get(&top).unwrap_or_else(|| panic!("unreduced term {e:?}"));
            v[j].add_term(base, c.clone());
        }
        v
    }

    pub fn from_coords(&self, v: &[Poly]) -> Poly {
        let mut out = Poly::zero();
        for (j, r) in v.iter().enumerate() {
            out.add_assign(&r.mul(&Poly::monomial(self.basis[j].clone(), self.field.one())));
        }
        out
    }

    pub fn basis_poly(&self, j: usize) -> Poly {
        Poly::monomial(self.basis[j].clone(), self.field.one())
    }

    /// Images of all variables under the natural derivation `g`.
    pub fn natural_images(&self, g: Sl2) -> Vec<Poly> {
        let mut imgs = base_images(g, self.n, &self.field);
        for i in 0..self.vars.len() {
            let v = self.var(i);
            imgs.push(match g {
                Sl2::E => Poly::int(&self.field, -1),
                Sl2::F => v.mul(&v),
                Sl2::H => v.scale(&self.field.int(-2)),
            });
        }
        imgs
    }

    /// Natural action of `g` (a derivation), reduced.
    pub fn act(&self, g: Sl2, p: &Poly) -> Poly {
        self.reduce(&p.derivation(&self.natural_images(g)))
    }

    /// Whether the relations are stable under the natural sl2-action (sanity check of the model).
    pub fn relations_invariant(&self) -> bool {
        Sl2::ALL.iter().all(|&g| {
            self.vars.iter().enumerate().all(|(i, v)| {
                let rel = v.rel.sub(&self.var(i).pow(v.deg as u32, &self.field));
                self.act(g, &rel).is_zero()
            })
        })
    }
}

fn trimmed(mut e: Exps) -> Exps {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn pad_rev(e: &Exps, len: usize) -> Vec<u8> {
    (0..len).map(|i| e.get(i).copied().unwrap_or(0)).collect()
}

/// `P(t) = Σ_k (-1)^k E_k t^{N-k}`, the polynomial whose roots are the `X_i`; returned as the
/// relation `t^N = -(P(t) - t^N)` for variable index `var` (global index).
pub fn root_relation(field: &Field, n: usize, var: usize) -> Poly {
    let t = Poly::var(var, field);
    let mut rhs = Poly::zero();
    for k in 1..=n {
        let term = Poly::var(k - 1, field).mul(&t.pow((n - k) as u32, field));
        rhs = if k % 2 == 1 { rhs.add(&term) } else { rhs.sub(&term) };
    }
    rhs
}

/// Relation for the second variable `b` of a pair `(a, b)` of distinct roots:
/// `(P(b) - P(a)) / (b - a) = Σ_k (-1)^k E_k h_{N-1-k}(a, b) = 0`, solved for `b^{N-1}`.
pub fn pair_relation(field: &Field, n: usize, a: usize, b: usize) -> Poly {
    let av = Poly::var(a, field);
    let bv = Poly::var(b, field);
    let h = |m: usize| -> Poly {
        let mut s = Poly::zero();
        for i in 0..=m {
            s.add_assign(&av.pow(i as u32, field).mul(&bv.pow((m - i) as u32, field)));
        }
        s
    };
    let mut full = Poly::zero();
    for k in 0..n {
        let term = if k == 0 { h(n - 1) } else { Poly::var(k - 1, field).mul(&h(n - 1 - k)) };
        full = if k % 2 == 0 { full.add(&term) } else { full.sub(&term) };
    }
    bv.pow((n - 1) as u32, field).sub(&full)
}

/// Relation `c^2 = (a + b) c - a b` for a root `c ∈ {a, b}`.
pub fn two_root_relation(field: &Field, a: usize, b: usize, c: usize) -> Poly {
    let (av, bv, cv) = (Poly::var(a, field), Poly::var(b, field), Poly::var(c, field));
    av.add(&bv).mul(&cv).sub(&av.mul(&bv))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: usize) -> Tower {
        let f = Field::Rationals;
        Tower::new(f, n, vec![TowerVar { name: "x".into(), deg: n as u8, rel: root_relation(&f, n, n) }])
    }

    #[test]
    fn circle_rank_and_relation() {
        let t = circle(2);
        assert_eq!(t.rank(), 2);
        let x = t.var(0);
        let x2 = t.mul(&x, &x);
        // x^2 = E1 x - E2
        assert_eq!(x2, t.e(1).mul(&x).sub(&t.e(2)));
        assert!(t.relations_invariant());
    }

    #[test]
    fn pair_tower_is_invariant() {
        let f = Field::Rationals;
        for n in 2..=4 {
            let (a, b, c) = (n, n + 1, n + 2);
            let vars = vec![
                TowerVar { name: "a".into(), deg: n as u8, rel: root_relation(&f, n, a) },
                TowerVar { name: "b".into(), deg: (n - 1) as u8, rel: pair_relation(&f, n, a, b) },
                TowerVar { name: "c".into(), deg: 2, rel: two_root_relation(&f, a, b, c) },
            ];
            let t = Tower::new(f, n, vars);
            assert_eq!(t.rank(), n * (n - 1) * 2);
            assert!(t.relations_invariant(), "n={n}");
            // b is itself a root
            let pb = root_relation(&f, n, b).sub(&t.var(1).pow(n as u32, &f));
            assert!(t.reduce(&pb).is_zero());
        }
    }

    #[test]
    fn coords_round_trip() {
        let t = circle(3);
        let x = t.var(0);
        let p = t.reduce(&x.pow(5, &t.field));
        assert_eq!(t.from_coords(&t.coords(&p)), p);
    }
}
