//! Searching for a homology basis on which sl2 and `R` act by a prescribed table.

use std::collections::BTreeMap;

use super::module::Homology;
use super::sl2mod::r_span_dims;
use super::window::monomials;
use crate::linalg::{apply, axpy, kernel, SVec};
use crate::ring::{Exps, Scalar, Sl2};

/// One side of a relation: a generator, optionally hit by an sl2 operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Id,
    G(Sl2),
}

/// `op(x_gen) = Σ c · E^m · x_j`.
#[derive(Clone, Debug)]
pub struct Relation {
    pub op: Op,
    pub gen: usize,
    pub rhs: Vec<(Scalar, Exps, usize)>,
}

impl Relation {
    pub fn new(op: Op, gen: usize, rhs: Vec<(Scalar, Exps, usize)>) -> Relation {
        Relation { op, gen, rhs }
    }
}

/// Generators found by [`Homology::realize`], with the bidegree of each.
#[derive(Clone, Debug)]
pub struct Realization {
    pub t: i64,
    pub qs: Vec<i64>,
    pub vectors: Vec<SVec>,
}

fn mono_degree(m: &Exps) -> i64 {
    m.iter().enumerate().map(|(i, &k)| 2 * (i as i64 + 1) * k as i64).sum()
}

impl Homology {
    /// Image of a class under multiplication by the monomial `E^m`; `None` past the window.
    pub fn apply_monomial(&self, m: &Exps, t: i64, q: i64, v: &SVec) -> Option<SVec> {
        let f = self.field();
        let mut cur = v.clone();
        let mut q = q;
        for (i, &k) in m.iter().enumerate() {
            for _ in 0..k {
                if cur.is_empty() {
                    return Some(cur);
                }
                let d = 2 * (i as i64 + 1);
                if !self.window.contains(q + d) {
                    return None;
                }
                cur = if self.dim(t, q + d) == 0 { Vec::new() } else { apply(f, &self.ring_matrix(i + 1, t, q)?, &cur) };
                q += d;
            }
        }
        Some(cur)
    }

    fn apply_op(&self, op: Op, t: i64, q: i64, v: &SVec) -> Option<SVec> {
        match op {
            Op::Id => Some(v.clone()),
            Op::G(g) => {
                if v.is_empty() || self.dim(t, q + g.q_shift()) == 0 {
                    return self.window.contains(q + g.q_shift()).then(Vec::new);
                }
                Some(apply(self.field(), &self.sl2_matrix(g, t, q)?, v))
            }
        }
    }

    /// Looks for classes `x_i ∈ H^{t, qs[i]}` satisfying every relation that freely generate
    /// homology in degree `t` over `R` on the certified window.
    pub fn realize(&self, t: i64, qs: &[i64], rels: &[Relation]) -> Option<Realization> {
        let f = self.field();
        let dims: Vec<usize> = qs.iter().map(|&q| self.dim(t, q)).collect();
        let mut offset = vec![0];
        for d in &dims {
            offset.push(offset.last().unwrap() + d);
        }
        let shift = |op: Op| if let Op::G(g) = op { g.q_shift() } else { 0 };
        let mut eq_off = vec![0];
        for r in rels {
            let q = qs[r.gen] + shift(r.op);
            for (_, m, j) in &r.rhs {
                if qs[*j] + mono_degree(m) != q {
                    return None;
                }
            }
            eq_off.push(eq_off.last().unwrap() + self.dim(t, q));
        }
        let mut cols: Vec<SVec> = Vec::with_capacity(offset[qs.len()]);
        for (i, &q) in qs.iter().enumerate() {
            for k in 0..dims[i] {
                let unit = vec![(k, f.one())];
                let mut col: BTreeMap<usize, Scalar> = BTreeMap::new();
                for (ri, r) in rels.iter().enumerate() {
                    let mut img: SVec = Vec::new();
                    if r.gen == i {
                        img = self.apply_op(r.op, t, q, &unit)?;
                    }
                    for (c, m, j) in &r.rhs {
                        if *j == i {
                            let y = self.apply_monomial(m, t, q, &unit)?;
                            img = axpy(&img, &c.neg(), &y);
                        }
                    }
                    for (p, c) in img {
                        col.insert(eq_off[ri] + p, c);
                    }
                }
                cols.push(col.into_iter().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        let ker = kernel(f, &cols);
        let (lo, hi) = self.window.certified();
        let target: BTreeMap<(i64, i64), usize> =
            self.certified_dims().into_iter().filter(|((tt, _), _)| *tt == t).collect();
        let free: BTreeMap<(i64, i64), usize> = (lo..=hi)
            .map(|q| ((t, q), qs.iter().map(|&qi| monomials(self.complex.n, q - qi).len()).sum::<usize>()))
            .filter(|(_, d)| *d > 0)
            .collect();
        if free != target {
            return None;
        }
        // deterministic generic combinations of the solution space
        for s in 0..8i64 {
            let mut x: SVec = Vec::new();
            for (j, v) in ker.iter().enumerate() {
                let c = f.int((j as i64 + 1 + s).pow(1 + s as u32 % 3));
                x = axpy(&x, &c, v);
            }
            let vectors: Vec<SVec> = (0..qs.len())
                .map(|i| {
                    x.iter()
                        .filter(|(p, _)| offset[i] <= *p && *p < offset[i + 1])
                        .map(|(p, c)| (p - offset[i], c.clone()))
                        .collect()
                })
                .collect();
            if vectors.iter().any(|v| v.is_empty()) {
                continue;
            }
            let gens: Vec<(i64, i64, SVec)> = qs.iter().zip(&vectors).map(|(&q, v)| (t, q, v.clone())).collect();
            let span: BTreeMap<(i64, i64), usize> = r_span_dims(self, &gens).into_iter().filter(|(_, d)| *d > 0).collect();
            if span == target {
                return Some(Realization { t, qs: qs.to_vec(), vectors });
            }
        }
        None
    }
}
