//! Concrete state-space models for resolutions of link diagrams.
//!
//! A state space is `P_Γ / I`, polynomials in the thin-edge variables modulo the relations
//! satisfied by all admissible edge colorings. Two presentations are implemented:
//!
//! * [`TurnbackModel`], `N = 2` only, any planar diagram: each dumbbell is replaced by its
//!   turnback smoothing, giving a union of circles; cube edges are merges and splits of the
//!   equivariant Frobenius algebra `k[E_1,E_2][x]/(x² - E_1 x + E_2)`.
//! * [`TwoStrandModel`], any `N`, closures of 2-strand braids: the resolution is a cyclic
//!   chain of dumbbells and its edge colorings are pairs of distinct colors, presented by a
//!   tower of monic relations.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::space::{EdgeMap, StateSpace};
use super::tower::{pair_relation, root_relation, two_root_relation, Tower, TowerVar};
use crate::ring::{Field, Poly};

/// Resolution of a crossing: the dumbbell web or the parallel (oriented) smoothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Res {
    D,
    P,
}

/// A crossing seen with both strands pointing up: bottom-left, bottom-right, top-left,
/// top-right diagram edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCrossing {
    pub sign: i8,
    pub bl: usize,
    pub br: usize,
    pub tl: usize,
    pub tr: usize,
}

impl LocalCrossing {
    /// The two arcs of the resolution, as pairs of edges.
    pub fn arcs(&self, r: Res) -> [(usize, usize); 2] {
        match r {
            Res::P => [(self.bl, self.tl), (self.br, self.tr)],
            Res::D => [(self.bl, self.br), (self.tl, self.tr)],
        }
    }
}

pub trait Model: Send + Sync {
    fn n(&self) -> usize;
    fn field(&self) -> Field;
    /// State space of the resolution (intrinsic q-shift only).
    fn space(&self, res: &[Res]) -> StateSpace;
    /// Map induced by changing crossing `c` of `res` to the other resolution.
    fn edge(&self, res: &[Res], c: usize, src: &StateSpace, tgt: &StateSpace) -> EdgeMap;
    fn name(&self) -> &'static str;
}

fn sigma_by_edges(src: &StateSpace, tgt: &StateSpace) -> Vec<Poly> {
    (0..src.tower.vars.len()).map(|i| tgt.edge_var(src.representative_edge(i)).clone()).collect()
}

/// `f(u - w)/(u - w) = u + w` for edge variables `u`, `w`.
fn difference_map(sigma: Vec<Poly>, u: &Poly, w: &Poly) -> EdgeMap {
    EdgeMap { sigma, weight: u.sub(w), log_f: u.add(w), log_h: -2 }
}

fn identity_weight(sigma: Vec<Poly>, f: &Field) -> EdgeMap {
    EdgeMap { sigma, weight: Poly::one(f), log_f: Poly::zero(), log_h: 0 }
}

/// Circle model: `N = 2` with any crossings, or any `N` for crossingless diagrams.
#[derive(Clone, Debug)]
pub struct TurnbackModel {
    pub field: Field,
    pub n: usize,
    pub crossings: Vec<LocalCrossing>,
    pub n_edges: usize,
    pub free_loops: usize,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

impl TurnbackModel {
    /// Circles of a resolution, each as its sorted list of edges (free loops use virtual edges).
    pub fn circles(&self, res: &[Res]) -> Vec<Vec<usize>> {
        let total = self.n_edges + self.free_loops;
        let mut d = Dsu((0..total).collect());
        for (c, r) in self.crossings.iter().zip(res) {
            for (a, b) in c.arcs(*r) {
                d.union(a, b);
            }
        }
        let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for e in 0..total {
            let r = d.find(e);
            comps.entry(r).or_default().push(e);
        }
        comps.into_values().collect()
    }
}

impl Model for TurnbackModel {
    fn n(&self) -> usize {
        self.n
    }

    fn field(&self) -> Field {
        self.field
    }

    fn name(&self) -> &'static str {
        "turnback"
    }

    fn space(&self, res: &[Res]) -> StateSpace {
        let (f, n) = (self.field, self.n);
        let circles = self.circles(res);
        let vars = (0..circles.len())
            .map(|i| TowerVar { name: format!("x{}", i + 1), deg: n as u8, rel: root_relation(&f, n, n + i) })
            .collect();
        let tower = Arc::new(Tower::new(f, n, vars));
        let mut edge_vars = BTreeMap::new();
        for (i, c) in circles.iter().enumerate() {
            for &e in c {
                edge_vars.insert(e, tower.var(i));
            }
        }
        let label = res.iter().map(|r| if *r == Res::D { 'D' } else { 'P' }).collect();
        StateSpace { shift: -((n as i64 - 1) * circles.len() as i64), tower, edge_vars, label }
    }

    fn edge(&self, res: &[Res], c: usize, src: &StateSpace, tgt: &StateSpace) -> EdgeMap {
        let x = &self.crossings[c];
        let [p1, p2] = x.arcs(res[c]);
        let sigma = sigma_by_edges(src, tgt);
        if src.edge_var(p1.0) != src.edge_var(p2.0) {
            return identity_weight(sigma, &self.field);
        }
        let other = if res[c] == Res::D { Res::P } else { Res::D };
        let [q1, q2] = x.arcs(other);
        let (u, w) = (tgt.edge_var(q1.0), tgt.edge_var(q2.0));
        let e1 = Poly::var(0, &self.field);
        EdgeMap { sigma, weight: u.add(w).sub(&e1), log_f: e1, log_h: -2 }
    }
}

/// Chain-of-dumbbells model for closures of 2-strand braids, any `N ≥ 2`.
/// Edge `(side, level)` has id `2·level + side` (side 0 = left); crossing `j` joins
/// level `j` (below) to level `j+1` (above), cyclically.
#[derive(Clone, Debug)]
pub struct TwoStrandModel {
    pub field: Field,
    pub n: usize,
    pub signs: Vec<i8>,
}

impl TwoStrandModel {
    pub fn levels(&self) -> usize {
        self.signs.len().max(1)
    }

    pub fn edge_id(side: usize, level: usize) -> usize {
        2 * level + side
    }

    pub fn crossing(&self, j: usize) -> LocalCrossing {
        let k = self.levels();
        LocalCrossing {
            sign: self.signs[j],
            bl: Self::edge_id(0, j),
            br: Self::edge_id(1, j),
            tl: Self::edge_id(0, (j + 1) % k),
            tr: Self::edge_id(1, (j + 1) % k),
        }
    }

    /// Pair index of each level: pair `s` runs from just above the `s`-th dumbbell up to the next.
    fn pair_of_level(&self, ds: &[usize]) -> Vec<usize> {
        let k = self.levels();
        let mut out = vec![0; k];
        for (s, &d) in ds.iter().enumerate() {
            let next = ds[(s + 1) % ds.len()];
            let mut l = (d + 1) % k;
            loop {
                out[l] = s;
                if l == next {
                    break;
                }
                l = (l + 1) % k;
            }
        }
        out
    }
}

impl Model for TwoStrandModel {
    fn n(&self) -> usize {
        self.n
    }

    fn field(&self) -> Field {
        self.field
    }

    fn name(&self) -> &'static str {
        "two-strand"
    }

    fn space(&self, res: &[Res]) -> StateSpace {
        let (f, n) = (self.field, self.n);
        let ds: Vec<usize> = (0..res.len()).filter(|&j| res[j] == Res::D).collect();
        let k = self.levels();
        let label: String = res.iter().map(|r| if *r == Res::D { 'D' } else { 'P' }).collect();
        let mut edge_vars = BTreeMap::new();
        if ds.is_empty() {
            let vars = vec![
                TowerVar { name: "l".into(), deg: n as u8, rel: root_relation(&f, n, n) },
                TowerVar { name: "r".into(), deg: n as u8, rel: root_relation(&f, n, n + 1) },
            ];
            let tower = Arc::new(Tower::new(f, n, vars));
            for l in 0..k {
                edge_vars.insert(Self::edge_id(0, l), tower.var(0));
                edge_vars.insert(Self::edge_id(1, l), tower.var(1));
            }
            return StateSpace { shift: -2 * (n as i64 - 1), tower, edge_vars, label };
        }
        let m = ds.len();
        let mut vars = vec![
            TowerVar { name: "a1".into(), deg: n as u8, rel: root_relation(&f, n, n) },
            TowerVar { name: "b1".into(), deg: (n - 1) as u8, rel: pair_relation(&f, n, n, n + 1) },
        ];
        for s in 1..m {
            vars.push(TowerVar { name: format!("a{}", s + 1), deg: 2, rel: two_root_relation(&f, n, n + 1, n + 1 + s) });
        }
        let tower = Arc::new(Tower::new(f, n, vars));
        let (a1, b1) = (tower.var(0), tower.var(1));
        let pair_vars: Vec<(Poly, Poly)> = (0..m)
            .map(|s| {
                if s == 0 {
                    (a1.clone(), b1.clone())
                } else {
                    let a = tower.var(s + 1);
                    (a.clone(), a1.add(&b1).sub(&a))
                }
            })
            .collect();
        for (l, s) in self.pair_of_level(&ds).into_iter().enumerate() {
            edge_vars.insert(Self::edge_id(0, l), pair_vars[s].0.clone());
            edge_vars.insert(Self::edge_id(1, l), tower.reduce(&pair_vars[s].1));
        }
        let shift = -((n as i64 - 1) + (n as i64 - 2) + (m as i64 - 1));
        StateSpace { shift, tower, edge_vars, label }
    }

    fn edge(&self, res: &[Res], c: usize, src: &StateSpace, tgt: &StateSpace) -> EdgeMap {
        let m = res.iter().filter(|r| **r == Res::D).count();
        let x = self.crossing(c);
        let sigma = sigma_by_edges(src, tgt);
        match res[c] {
            Res::D if m == 1 => difference_map(sigma, tgt.edge_var(x.bl), tgt.edge_var(x.br)),
            Res::D => identity_weight(sigma, &self.field),
            Res::P if m == 0 => identity_weight(sigma, &self.field),
            Res::P => difference_map(sigma, tgt.edge_var(x.tl), tgt.edge_var(x.br)),
        }
    }
}

/// Cup twist of every circle in an all-parallel resolution: `-½((N-1)x + p̄_1(x))` with
/// `p̄_1(x) = E_1 - x`.
pub fn cup_twist(space: &StateSpace) -> Poly {
    let t = &space.tower;
    let f = t.field;
    let half = f.frac(-1, 2).expect("2 is invertible");
    let mut out = Poly::zero();
    for i in 0..t.vars.len() {
        let x = t.var(i);
        let term = x.scale(&f.int(t.n as i64 - 2)).add(&t.e(1));
        out.add_assign(&term.scale(&half));
    }
    out
}
