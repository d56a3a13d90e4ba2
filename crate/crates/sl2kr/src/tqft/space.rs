use std::collections::BTreeMap;
use std::sync::Arc;

use super::tower::Tower;
use crate::linalg::PMat;
use crate::ring::{sl2_on_base, Field, LaurentQ, Poly, Scalar, Sl2};

/// State space of a resolution web: a free graded `k[E]`-module given by a tower ring.
#[derive(Clone, Debug)]
pub struct StateSpace {
    pub tower: Arc<Tower>,
    /// Edge variable of each diagram edge (the thin-edge decoration `x_e`).
    pub edge_vars: BTreeMap<usize, Poly>,
    /// q-degree of the basis element `1`.
    pub shift: i64,
    pub label: String,
}

impl StateSpace {
    pub fn field(&self) -> Field {
        self.tower.field
    }

    pub fn n(&self) -> usize {
        self.tower.n
    }

    pub fn rank(&self) -> usize {
        self.tower.rank()
    }

    pub fn q_degree(&self, j: usize) -> i64 {
        self.shift + self.tower.basis_degree(j)
    }

    /// Graded rank over `k[E]` as a Laurent polynomial.
    pub fn graded_rank(&self) -> LaurentQ {
        LaurentQ::from_coeffs((0..self.rank()).map(|j| (self.q_degree(j), 1)))
    }

    pub fn edge_var(&self, e: usize) -> &Poly {
        self.edge_vars.get(&e).unwrap_or_else(|| panic!("edge {e} not in web {}", self.label))
    }

    /// Some diagram edge carrying tower variable `i`.
    pub fn representative_edge(&self, i: usize) -> usize {
        let v = self.tower.var(i);
        *self
            .edge_vars
            .iter()
            .find(|(_, p)| **p == v)
            .unwrap_or_else(|| panic!("tower variable {i} of {} has no edge", self.label))
            .0
    }

    /// Matrix of multiplication by `p`.
    pub fn mult_matrix(&self, p: &Poly) -> PMat {
        let t = &self.tower;
        let mut m = PMat::zero(self.rank(), self.rank());
        for j in 0..self.rank() {
            let col = t.coords(&t.mul(p, &t.basis_poly(j)));
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// Connection matrix of `g`: `g(Σ r_j b_j) = Σ g(r_j) b_j + r_j M b_j`.
    pub fn sl2_matrix(&self, g: Sl2, twist: &Twist) -> PMat {
        let t = &self.tower;
        let mut m = PMat::zero(self.rank(), self.rank());
        for j in 0..self.rank() {
            let b = t.basis_poly(j);
            let mut img = t.act(g, &b);
            match g {
                Sl2::E => {}
                Sl2::F => img = img.add(&t.mul(&twist.f, &b)),
                Sl2::H => img = img.add(&b.scale(&twist.h)),
            }
            for (i, c) in t.coords(&t.reduce(&img)).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }
}

/// Flat twist `τ(e) = 0`, `τ(f) = f`, `τ(h) = h` (a constant).
#[derive(Clone, Debug, PartialEq)]
pub struct Twist {
    pub f: Poly,
    pub h: Scalar,
}

impl Twist {
    pub fn zero(field: &Field) -> Twist {
        Twist { f: Poly::zero(), h: field.zero() }
    }

    /// Twist with `τ(h)` forced by flatness from `τ(f)`.
    pub fn from_f(tower: &Tower, f: Poly) -> Twist {
        let h = tower.act(Sl2::E, &f).as_constant().unwrap_or_else(|| tower.field.zero());
        Twist { f, h }
    }

    pub fn add(&self, o: &Twist) -> Twist {
        Twist { f: self.f.add(&o.f), h: self.h.add(&o.h) }
    }

    /// `τ([e,f]) = e·τ(f)` and `τ([h,f]) = h·τ(f)`; `τ([h,e]) = -e·τ(h)` holds because `τ(h)` is constant.
    pub fn is_flat(&self, tower: &Tower) -> bool {
        let ef = tower.act(Sl2::E, &self.f);
        let hf = tower.act(Sl2::H, &self.f);
        ef == Poly::constant(self.h.clone()) && hf == self.f.scale(&tower.field.int(-2))
    }
}

/// A map between state spaces of the form `p ↦ ω · σ(p)` with `σ` a ring homomorphism
/// on the tower generators. `log_f = f(ω)/ω` and `log_h = h(ω)/ω` drive twist propagation.
#[derive(Clone, Debug)]
pub struct EdgeMap {
    pub sigma: Vec<Poly>,
    pub weight: Poly,
    pub log_f: Poly,
    pub log_h: i64,
}

impl EdgeMap {
    pub fn apply(&self, src: &StateSpace, tgt: &StateSpace, p: &Poly) -> Poly {
        let f = src.field();
        let mut imgs: Vec<Poly> = (0..src.n()).map(|i| Poly::var(i, &f)).collect();
        imgs.extend(self.sigma.iter().cloned());
        let s = p.subst(&imgs, &f);
        tgt.tower.reduce(&tgt.tower.mul(&self.weight, &tgt.tower.reduce(&s)))
    }

    pub fn matrix(&self, src: &StateSpace, tgt: &StateSpace) -> PMat {
        let mut m = PMat::zero(tgt.rank(), src.rank());
        for j in 0..src.rank() {
            let img = self.apply(src, tgt, &src.tower.basis_poly(j));
            for (i, c) in tgt.tower.coords(&img).into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }
}

/// `g_R(D) + M_tgt D - D M_src`, which vanishes exactly when `D` intertwines the actions.
pub fn equivariance_defect(g: Sl2, d: &PMat, m_src: &PMat, m_tgt: &PMat, n: usize, field: &Field) -> PMat {
    let gd = d.map_entries(|p| sl2_on_base(g, p, n, field));
    gd.add(&m_tgt.mul(d)).sub(&d.mul(m_src))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tqft::tower::{root_relation, TowerVar};

    #[test]
    fn circle_twist_flat() {
        let f = Field::Rationals;
        let t = Tower::new(f, 2, vec![TowerVar { name: "x".into(), deg: 2, rel: root_relation(&f, 2, 2) }]);
        let half = f.frac(-1, 2).unwrap();
        let tw = Twist::from_f(&t, t.e(1).scale(&half));
        assert!(tw.is_flat(&t));
        assert_eq!(tw.h, f.int(1));
    }
}
