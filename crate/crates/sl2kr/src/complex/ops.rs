//! Operations on cubes: the equivariance report, green-dot slides, framing correction and the
//! chain maps of elementary cobordisms against a small unknot.

use std::collections::BTreeMap;

use super::chain::{ChainComplex, Failure};
use super::cube::{Cube, Framing, GreenDot};
use super::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::linalg::PMat;
use crate::ring::Poly;
use crate::tqft::{EdgeMap, StateSpace};

#[derive(Clone, Debug, PartialEq)]
pub struct EquivarianceReport {
    /// Cube edges (vertex pairs) whose maps were checked.
    pub edges: usize,
    pub d_squared: Option<Failure>,
    pub equivariance: Option<Failure>,
    pub relations: Option<Failure>,
    /// Generator labels `(row, column)` of the first failure.
    pub location: Option<(String, String)>,
}

impl EquivarianceReport {
    pub fn passed(&self) -> bool {
        self.d_squared.is_none() && self.equivariance.is_none() && self.relations.is_none()
    }
}

/// `d∘d = 0`, `g∘d = d∘g` for `e, f, h`, and the sl2 relations on every chain group.
pub fn check_equivariance(cube: &Cube) -> EquivarianceReport {
    let c = cube.chain();
    let nc = cube.diagram.crossings.len();
    let edges = if nc == 0 { 0 } else { nc << (nc - 1) };
    let d_squared = c.check_d_squared();
    let equivariance = c.check_equivariance();
    let relations = c.check_sl2_relations();
    let location = d_squared.as_ref().or(equivariance.as_ref()).map(|fl| {
        let label = |t: i64, i: usize| c.labels.get(&t).and_then(|l| l.get(i)).cloned().unwrap_or_default();
        let shift = if fl.check.starts_with("d∘d") { 2 } else { 1 };
        (label(fl.degree + shift, fl.row), label(fl.degree, fl.col))
    });
    EquivarianceReport { edges, d_squared, equivariance, relations, location }
}

/// The edge on the other side of `crossing` along the strand through `edge`.
pub fn across(d: &LinkDiagram, edge: usize, crossing: usize) -> Result<usize> {
    let c = d.crossings.get(crossing).ok_or_else(|| Error::Location(format!("no crossing {crossing}")))?;
    // strands run bl → tr and br → tl
    match edge {
        e if e == c.bl => Ok(c.tr),
        e if e == c.tr => Ok(c.bl),
        e if e == c.br => Ok(c.tl),
        e if e == c.tl => Ok(c.br),
        _ => Err(Error::Location(format!("edge {} does not meet crossing {crossing}", edge + 1))),
    }
}

/// Rebuilds the cube with green dot `dot` moved through `crossing`.
pub fn slide_green_dot(cube: &Cube, dot: usize, crossing: usize) -> Result<Cube> {
    let mut opts = cube.opts.clone();
    let g = opts.dots.get(dot).ok_or_else(|| Error::Location(format!("no green dot {dot}")))?;
    let edge = across(&cube.diagram, g.edge, crossing)?;
    opts.dots[dot] = GreenDot { edge, ..g.clone() };
    Cube::new(&cube.diagram, &opts)
}

/// Rebuilds the cube in the given framing mode.
pub fn frame_correct(cube: &Cube, mode: Framing) -> Result<Cube> {
    let mut opts = cube.opts.clone();
    opts.framing = mode;
    Cube::new(&cube.diagram, &opts)
}

/// Elementary cobordisms between `L` and `L ⊔ O`, the extra unknot sitting next to a chosen edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Elementary {
    /// `L → L ⊔ O`.
    Cup,
    /// `L ⊔ O → L`.
    Cap,
    /// `L → L ⊔ O`, splitting `O` off the edge.
    Split,
    /// `L ⊔ O → L`, merging `O` into the edge.
    Merge,
    /// `L → L`, multiplication by the edge variable.
    Dot,
}

/// A degree-`degree` map of complexes, keyed by homological degree.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap {
    pub degree: i64,
    pub maps: BTreeMap<i64, PMat>,
}

impl ChainMap {
    /// `d_tgt ∘ φ = φ ∘ d_src` in every degree.
    pub fn commutes(&self, src: &ChainComplex, tgt: &ChainComplex) -> bool {
        let zero = |r, c| PMat::zero(r, c);
        self.maps.keys().chain(src.d.keys()).all(|&t| {
            let here = self.maps.get(&t).cloned().unwrap_or_else(|| zero(tgt.dim(t), src.dim(t)));
            let next = self.maps.get(&(t + 1)).cloned().unwrap_or_else(|| zero(tgt.dim(t + 1), src.dim(t + 1)));
            tgt.d_at(t).mul(&here) == next.mul(&src.d_at(t))
        })
    }
}

fn by_edges(src: &StateSpace, tgt: &StateSpace, skip: Option<usize>, onto: Option<&Poly>) -> Vec<Poly> {
    (0..src.tower.vars.len())
        .map(|i| {
            let e = src.representative_edge(i);
            if Some(e) == skip {
                onto.cloned().unwrap_or_else(Poly::zero)
            } else {
                tgt.edge_var(e).clone()
            }
        })
        .collect()
}

fn vertex_map(kind: Elementary, edge: usize, o: usize, src: &StateSpace, tgt: &StateSpace) -> PMat {
    let f = src.field();
    let n = src.n();
    let plain = |sigma: Vec<Poly>, weight: Poly| EdgeMap { sigma, weight, log_f: Poly::zero(), log_h: 0 }.matrix(src, tgt);
    match kind {
        Elementary::Cup => plain(by_edges(src, tgt, None, None), Poly::one(&f)),
        Elementary::Merge => plain(by_edges(src, tgt, Some(o), Some(tgt.edge_var(edge))), Poly::one(&f)),
        Elementary::Split => {
            let (a, b) = (tgt.edge_var(edge), tgt.edge_var(o));
            let h = |m: usize| (0..=m).fold(Poly::zero(), |s, i| s.add(&a.pow(i as u32, &f).mul(&b.pow((m - i) as u32, &f))));
            let delta = (0..n).fold(Poly::zero(), |s, k| {
                let term = tgt.tower.e(k).mul(&h(n - 1 - k));
                if k % 2 == 0 {
                    s.add(&term)
                } else {
                    s.sub(&term)
                }
            });
            plain(by_edges(src, tgt, None, None), delta)
        }
        Elementary::Cap => {
            // ε picks the coefficient of x_O^{N-1}
            let xo = src.edge_var(o).terms().next().map(|(e, _)| e.len() - 1).expect("edge variable");
            let sigma = by_edges(src, tgt, Some(o), None);
            let mut imgs: Vec<Poly> = (0..n).map(|i| Poly::var(i, &f)).collect();
            imgs.extend(sigma);
            let mut m = PMat::zero(tgt.rank(), src.rank());
            for j in 0..src.rank() {
                let b = src.tower.basis_poly(j);
                let mut top = Poly::zero();
                for (e, c) in b.terms() {
                    if e.get(xo).copied().unwrap_or(0) as usize == n - 1 {
                        let mut e = e.clone();
                        e[xo] = 0;
                        top.add_term(e, c.clone());
                    }
                }
                let img = tgt.tower.reduce(&top.subst(&imgs, &f));
                for (i, c) in tgt.tower.coords(&img).into_iter().enumerate() {
                    m.set(i, j, c);
                }
            }
            m
        }
        Elementary::Dot => src.mult_matrix(src.edge_var(edge)),
    }
}

/// Chain map of an elementary cobordism. Both cubes must come from the circle model (`N = 2`
/// or crossingless), and `tgt`/`src` must be `L ⊔ O` where the move creates/removes `O`.
pub fn cobordism_map(kind: Elementary, edge: usize, src: &Cube, tgt: &Cube) -> Result<ChainMap> {
    if src.model.name() != "turnback" || tgt.model.name() != "turnback" {
        return Err(Error::Unsupported("cobordism maps need the circle model".into()));
    }
    let (small, big) = match kind {
        Elementary::Cup | Elementary::Split => (&src.diagram, &tgt.diagram),
        Elementary::Cap | Elementary::Merge => (&tgt.diagram, &src.diagram),
        Elementary::Dot => (&src.diagram, &tgt.diagram),
    };
    let expected = if kind == Elementary::Dot { small.clone() } else { small.with_unknot() };
    if *big != expected {
        return Err(Error::Location("the diagrams do not differ by the elementary move".into()));
    }
    if edge >= small.n_edges && !matches!(kind, Elementary::Cup | Elementary::Cap) {
        return Err(Error::Location(format!("edge {} not in diagram", edge + 1)));
    }
    let n = src.n() as i64;
    let degree = match kind {
        Elementary::Cup | Elementary::Cap => 1 - n,
        Elementary::Split | Elementary::Merge => n - 1,
        Elementary::Dot => 2,
    };
    let o = small.n_edges;
    let mut maps = BTreeMap::new();
    let (sg, tg) = (src.by_degree(), tgt.by_degree());
    for (&t, vs) in &sg {
        let ws = &tg[&t];
        let rows: usize = ws.iter().map(|&w| tgt.vertices[w].space.rank()).sum();
        let cols: usize = vs.iter().map(|&v| src.vertices[v].space.rank()).sum();
        let mut m = PMat::zero(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for (&v, &w) in vs.iter().zip(ws) {
            let (a, b) = (&src.vertices[v].space, &tgt.vertices[w].space);
            m.put_block(r0, c0, &vertex_map(kind, edge, o, a, b));
            r0 += b.rank();
            c0 += a.rank();
        }
        maps.insert(t + src.shift.0, m);
    }
    Ok(ChainMap { degree, maps })
}
