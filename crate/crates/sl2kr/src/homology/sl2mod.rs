//! The sl2-module structure of truncated homology: weight tables, highest-weight vectors and
//! a decomposition into simples, Vermas, dual Vermas and projectives.
//!
//! Decomposition works one homological degree and one Casimir block at a time. For
//! `λ ≥ 0` the block of `{λ, -λ-2}` can contain `L(λ)`, `M(-λ-2)`, `M(λ)`, `M*(λ)` and
//! `P(-λ-2)`; their multiplicities `a, b, c, d, p` are recovered from five ranks near the
//! two special weights (see [`BlockData::solve`]). The singular block `λ = -1` only holds
//! `M(-1)`, and a non-integral block only holds simple Vermas.

use std::collections::BTreeMap;
use std::fmt;

use super::module::Homology;
use crate::error::{Error, Result};
use crate::linalg::{apply, kernel, rank, Echelon, SVec};
use crate::ring::{Field, Scalar, Sl2};

/// Columns of a linear map between two pieces.
type Cols = Vec<SVec>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    /// Finite-dimensional simple `L(λ)`.
    Simple,
    /// Verma `M(λ)`.
    Verma,
    /// Dual Verma `M*(λ)`.
    DualVerma,
    /// Projective cover `P(λ)`.
    Projective,
    /// Highest weight seen, but the block reaches past the certified window.
    Unresolved,
}

impl Kind {
    fn symbol(self) -> &'static str {
        match self {
            Kind::Simple => "L",
            Kind::Verma => "M",
            Kind::DualVerma => "M*",
            Kind::Projective => "P",
            Kind::Unresolved => "?",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constituent {
    pub t: i64,
    pub kind: Kind,
    /// Label weight (for `P(λ)` this is the weight of the projective cover's head).
    pub lambda: Scalar,
    pub mult: usize,
    /// Every rank used for the identification was computed inside the certified window.
    pub certified: bool,
}

impl fmt::Display for Constituent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tpart = if self.t == 0 { String::new() } else { format!("t^{} ", self.t) };
        let m = if self.mult == 1 { String::new() } else { format!("^{}", self.mult) };
        write!(f, "{tpart}{}({}){m}", self.kind.symbol(), self.lambda)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightRow {
    pub t: i64,
    pub q: i64,
    pub weight: Scalar,
    pub dim: usize,
    /// `dim ker e` on this piece.
    pub highest: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sl2Report {
    pub field: Field,
    pub certified: (i64, i64),
    /// Certified pieces only, ordered by `(t, q)`.
    pub weights: Vec<WeightRow>,
    pub constituents: Vec<Constituent>,
    /// Locally finite submodule `L(λ)^{a+d}` per degree.
    pub gamma: Vec<Constituent>,
    /// Locally finite quotient `L(λ)^{a+c}` per degree.
    pub zeta: Vec<Constituent>,
}

impl Sl2Report {
    /// Constituents of one homological degree as `(kind, λ) ↦ mult`, with λ as an integer.
    pub fn summary(&self, t: i64) -> BTreeMap<(Kind, i64), usize> {
        let mut out = BTreeMap::new();
        for c in self.constituents.iter().filter(|c| c.t == t) {
            let l = c.lambda.as_rat().and_then(|r| r.to_i64()).unwrap_or(i64::MIN);
            *out.entry((c.kind, l)).or_default() += c.mult;
        }
        out
    }
}

/// `Ω = (h+1)² + 4fe` is central; its eigenvalue on a block `{λ, -λ-2}` is `(λ+1)²`.
fn casimir(h: &Homology, t: i64, q: i64, w: &Scalar) -> Option<Cols> {
    let f = h.field();
    let n = h.dim(t, q);
    let e = h.sl2_matrix(Sl2::E, t, q)?;
    let ff = if h.dim(t, q - 2) > 0 { h.sl2_matrix(Sl2::F, t, q - 2)? } else { Vec::new() };
    let s = w.add(&f.one());
    let c = s.mul(&s);
    let four = f.int(4);
    Some(
        (0..n)
            .map(|k| {
                let fe = if ff.is_empty() { Vec::new() } else { apply(f, &ff, &e[k]) };
                let mut v = crate::linalg::echelon::scale(&fe, &four);
                v = crate::linalg::axpy(&v, &c, &vec![(k, f.one())]);
                v
            })
            .collect(),
    )
}

fn compose(f: Field, outer: &Cols, inner: &Cols) -> Cols {
    inner.iter().map(|v| apply(f, outer, v)).collect()
}

/// Basis of the generalized eigenspace of `m` (an `n × n` map) for eigenvalue `c`.
fn generalized_eigenspace(f: Field, m: &Cols, n: usize, c: &Scalar) -> Vec<SVec> {
    let shifted: Cols = (0..n).map(|k| crate::linalg::axpy(&m[k], &c.neg(), &vec![(k, f.one())])).collect();
    let mut p = shifted.clone();
    let mut ker = kernel(f, &p);
    if ker.is_empty() {
        return ker;
    }
    loop {
        p = compose(f, &shifted, &p);
        let next = kernel(f, &p);
        if next.len() == ker.len() {
            return ker;
        }
        ker = next;
    }
}

fn int_of(s: &Scalar) -> Option<i64> {
    s.as_rat().filter(|r| r.is_integer()).and_then(|r| r.to_i64())
}

/// Data of one degree: pieces `q ↦ (weight, dim)` in the certified window.
struct Degree<'a> {
    h: &'a Homology,
    t: i64,
    /// weight = offset - q
    offset: Scalar,
    lo: i64,
    hi: i64,
    gen_min: i64,
}

impl Degree<'_> {
    fn q_of(&self, w: i64) -> Option<i64> {
        let off = int_of(&self.offset)?;
        Some(off - w)
    }

    /// Inside the certified window, or below every generator (hence certainly zero).
    fn known(&self, q: i64) -> bool {
        q <= self.hi && (q >= self.lo || q < self.gen_min)
    }
}

/// Block-restricted measurements for `λ ≥ 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct BlockData {
    top: usize,
    bot: usize,
    ker_e: usize,
    ker_f: usize,
    r: usize,
    p: usize,
}

impl BlockData {
    /// Multiplicities `(a, b, c, d, p)` of `L(λ), M(-λ-2), M(λ), M*(λ), P(-λ-2)`.
    fn solve(&self) -> Option<[usize; 5]> {
        let c = self.r.checked_sub(self.p)?;
        let d = self.bot.checked_sub(self.ker_e)?.checked_sub(self.p)?;
        let a = self.ker_f.checked_sub(d)?;
        let b = self.ker_e.checked_sub(self.r)?;
        (a + c + d + self.p == self.top).then_some([a, b, c, d, self.p])
    }
}

impl Homology {
    /// Weight table on the certified window.
    pub fn weight_table(&self) -> Result<Vec<WeightRow>> {
        let mut out = Vec::new();
        for ((t, q), dim) in self.certified_dims() {
            let weight = self.weight(t, q)?.expect("nonzero piece");
            let highest = if self.dim(t, q - 2) == 0 {
                dim
            } else {
                let e = self.sl2_matrix(Sl2::E, t, q).expect("certified");
                dim - rank(self.field(), &e)
            };
            out.push(WeightRow { t, q, weight, dim, highest });
        }
        Ok(out)
    }

    /// Highest-weight vectors: `(t, q, basis of ker e)` on the certified window.
    pub fn highest_weight_vectors(&self) -> Vec<(i64, i64, Vec<SVec>)> {
        let f = self.field();
        let mut out = Vec::new();
        for ((t, q), dim) in self.certified_dims() {
            let ker = if self.dim(t, q - 2) == 0 {
                (0..dim).map(|k| vec![(k, f.one())]).collect()
            } else {
                kernel(f, &self.sl2_matrix(Sl2::E, t, q).expect("certified"))
            };
            if !ker.is_empty() {
                out.push((t, q, ker));
            }
        }
        out
    }

    fn degree(&self, t: i64) -> Result<Option<Degree<'_>>> {
        let (lo, hi) = self.window.certified();
        let mut offset: Option<Scalar> = None;
        for q in lo..=hi {
            if let Some(w) = self.weight(t, q)? {
                let o = w.add(&self.field().int(q));
                match &offset {
                    None => offset = Some(o),
                    Some(x) if *x != o => {
                        return Err(Error::Inconsistent(format!("weights in degree {t} are not -q + const")));
                    }
                    _ => {}
                }
            }
        }
        let gen_min = self.complex.degs.get(&t).and_then(|d| d.iter().min().copied()).unwrap_or(i64::MAX);
        Ok(offset.map(|offset| Degree { h: self, t, offset, lo, hi, gen_min }))
    }

    /// Decomposition of every homological degree into indecomposables, with the
    /// locally finite parts. Only over ℚ.
    pub fn decompose(&self) -> Result<Sl2Report> {
        let f = self.field();
        if f != Field::Rationals {
            return Err(Error::Unsupported("sl2 decomposition is implemented over ℚ".into()));
        }
        let weights = self.weight_table()?;
        let mut constituents = Vec::new();
        let mut gamma = Vec::new();
        let mut zeta = Vec::new();
        for t in self.degrees() {
            let Some(deg) = self.degree(t)? else { continue };
            let (cs, g, z) = decompose_degree(&deg)?;
            constituents.extend(cs);
            gamma.extend(g);
            zeta.extend(z);
        }
        Ok(Sl2Report { field: f, certified: self.window.certified(), weights, constituents, gamma, zeta })
    }
}

type Parts = (Vec<Constituent>, Vec<Constituent>, Vec<Constituent>);

fn decompose_degree(deg: &Degree<'_>) -> Result<Parts> {
    let h = deg.h;
    let f = h.field();
    let t = deg.t;
    let mut cons = Vec::new();
    let Some(off) = int_of(&deg.offset) else {
        // non-integral weights: every block is a single simple Verma
        for q in deg.lo..=deg.hi {
            let dim = h.dim(t, q);
            if dim == 0 {
                continue;
            }
            let ke = if h.dim(t, q - 2) == 0 { dim } else { dim - rank(f, &h.sl2_matrix(Sl2::E, t, q).unwrap()) };
            if ke > 0 {
                let lambda = deg.offset.sub(&f.int(q));
                cons.push(Constituent { t, kind: Kind::Verma, lambda, mult: ke, certified: true });
            }
        }
        return Ok((cons, vec![], vec![]));
    };
    // generalized Casimir eigenspaces per weight
    let mut spaces: BTreeMap<(i64, i64), Vec<SVec>> = BTreeMap::new(); // (λ, weight) ↦ basis
    let mut blocks: Vec<i64> = Vec::new();
    for q in deg.lo..=deg.hi {
        let dim = h.dim(t, q);
        if dim == 0 {
            continue;
        }
        let w = off - q;
        let om = casimir(h, t, q, &f.int(w)).ok_or_else(|| Error::Window(format!("Casimir at ({t},{q})")))?;
        let mut found = 0;
        let top = off - deg.lo;
        let mut lam = w.max(-1);
        if (lam - w).rem_euclid(2) != 0 {
            lam += 1;
        }
        while lam <= top.max(-w - 2) {
            let c = f.int((lam + 1) * (lam + 1));
            let basis = generalized_eigenspace(f, &om, dim, &c);
            if !basis.is_empty() {
                found += basis.len();
                spaces.insert((lam, w), basis);
                if !blocks.contains(&lam) {
                    blocks.push(lam);
                }
            }
            lam += 2;
        }
        if found != dim {
            return Err(Error::Inconsistent(format!(
                "Casimir eigenvalues on H^({t},{q}) are not of the form (λ+1)² with λ in range"
            )));
        }
    }
    blocks.sort_unstable_by(|a, b| b.cmp(a));
    let (mut gamma, mut zeta) = (Vec::new(), Vec::new());
    let empty = Vec::new();
    let space = |lam: i64, w: i64| spaces.get(&(lam, w)).unwrap_or(&empty);
    let push = |v: &mut Vec<Constituent>, kind, lam: i64, mult: usize, certified| {
        if mult > 0 {
            v.push(Constituent { t, kind, lambda: f.int(lam), mult, certified });
        }
    };
    for lam in blocks {
        let dims: BTreeMap<i64, usize> =
            spaces.iter().filter(|((l, _), _)| *l == lam).map(|((_, w), b)| (*w, b.len())).collect();
        if lam == -1 {
            let m = dims.get(&-1).copied().unwrap_or(0);
            push(&mut cons, Kind::Verma, -1, m, deg.q_of(-1).is_some_and(|q| deg.known(q)));
            check_profile(t, lam, &dims, &|w| if w <= -1 { m } else { 0 }, deg, -1)?;
            continue;
        }
        let qb = deg.q_of(-lam - 2).unwrap();
        let resolved = deg.known(qb) && deg.known(deg.q_of(lam).unwrap());
        if !resolved {
            let top = dims.get(&lam).copied().unwrap_or(0);
            push(&mut cons, Kind::Unresolved, lam, top, false);
            continue;
        }
        let mapped = |g: Sl2, w: i64, basis: &[SVec]| -> Result<Cols> {
            let q = deg.q_of(w).unwrap();
            if basis.is_empty() || h.dim(t, q + g.q_shift()) == 0 {
                return Ok(vec![Vec::new(); basis.len()]);
            }
            let m = h.sl2_matrix(g, t, q).ok_or_else(|| Error::Window(format!("{g:?} at ({t},{q})")))?;
            Ok(basis.iter().map(|v| apply(f, &m, v)).collect())
        };
        let btop = space(lam, lam).clone();
        let bbot = space(lam, -lam - 2).clone();
        let bmid = space(lam, -lam).clone();
        let e_bot = mapped(Sl2::E, -lam - 2, &bbot)?;
        let f_mid = mapped(Sl2::F, -lam, &bmid)?;
        let fe_bot: Cols = {
            let q = deg.q_of(-lam).unwrap();
            if h.dim(t, q) == 0 || h.dim(t, q + 2) == 0 {
                vec![Vec::new(); bbot.len()]
            } else {
                let fm = h.sl2_matrix(Sl2::F, t, q).unwrap();
                e_bot.iter().map(|v| apply(f, &fm, v)).collect()
            }
        };
        let mut chain = btop.clone();
        for k in 0..=lam {
            chain = mapped(Sl2::F, lam - 2 * k, &chain)?;
        }
        let data = BlockData {
            top: btop.len(),
            bot: bbot.len(),
            ker_e: bbot.len() - rank(f, &e_bot),
            ker_f: bmid.len() - rank(f, &f_mid),
            r: rank(f, &chain),
            p: rank(f, &fe_bot),
        };
        let [a, b, c, d, p] = data.solve().ok_or_else(|| {
            Error::Inconsistent(format!("block λ = {lam} in degree {t}: rank data {data:?} fits no decomposition"))
        })?;
        push(&mut cons, Kind::Simple, lam, a, true);
        push(&mut cons, Kind::Verma, lam, c, true);
        push(&mut cons, Kind::DualVerma, lam, d, true);
        push(&mut cons, Kind::Projective, -lam - 2, p, true);
        push(&mut cons, Kind::Verma, -lam - 2, b, true);
        push(&mut gamma, Kind::Simple, lam, a + d, true);
        push(&mut zeta, Kind::Simple, lam, a + c, true);
        let profile = |w: i64| {
            if w > lam {
                0
            } else if w >= -lam {
                a + c + d + p
            } else {
                b + c + d + 2 * p
            }
        };
        check_profile(t, lam, &dims, &profile, deg, lam)?;
    }
    cons.sort_by(|x, y| y.lambda.as_rat().cmp(&x.lambda.as_rat()).then(x.kind.cmp(&y.kind)));
    Ok((cons, gamma, zeta))
}

/// Reconstructed block dimensions must equal the measured ones at every certified weight.
fn check_profile(
    t: i64,
    lam: i64,
    dims: &BTreeMap<i64, usize>,
    profile: &dyn Fn(i64) -> usize,
    deg: &Degree<'_>,
    top: i64,
) -> Result<()> {
    let off = int_of(&deg.offset).unwrap();
    for q in deg.lo..=deg.hi {
        let w = off - q;
        if (w - top).rem_euclid(2) != 0 {
            continue;
        }
        let measured = dims.get(&w).copied().unwrap_or(0);
        if measured != profile(w) {
            return Err(Error::Inconsistent(format!(
                "block λ = {lam} in degree {t}: weight {w} has dimension {measured}, decomposition predicts {}",
                profile(w)
            )));
        }
    }
    Ok(())
}

/// Searches the `R`-span of `gens` (each `(t, q, vector)`) and returns its dimension in every
/// certified piece of the listed degrees.
pub fn r_span_dims(h: &Homology, gens: &[(i64, i64, SVec)]) -> BTreeMap<(i64, i64), usize> {
    let f = h.field();
    let (lo, hi) = h.window.certified();
    let mut spans: BTreeMap<(i64, i64), Echelon> = BTreeMap::new();
    // breadth-first over q: multiply everything already in a piece by E_1..E_N
    let mut frontier: BTreeMap<(i64, i64), Vec<SVec>> = BTreeMap::new();
    for (t, q, v) in gens {
        frontier.entry((*t, *q)).or_default().push(v.clone());
    }
    let ts: Vec<i64> = frontier.keys().map(|k| k.0).collect();
    for &t in &ts {
        for q in lo..=h.window.qmax {
            let Some(vs) = frontier.remove(&(t, q)) else { continue };
            let ech = spans.entry((t, q)).or_insert_with(|| Echelon::new(f));
            let mut fresh = Vec::new();
            for v in vs {
                if ech.insert(&v, Vec::new()).is_none() {
                    fresh.push(v);
                }
            }
            for i in 1..=h.complex.n {
                let q2 = q + 2 * i as i64;
                if q2 > hi || h.dim(t, q2) == 0 || fresh.is_empty() {
                    continue;
                }
                let m = h.ring_matrix(i, t, q).expect("inside window");
                let out = frontier.entry((t, q2)).or_default();
                out.extend(fresh.iter().map(|v| apply(f, &m, v)).filter(|v| !v.is_empty()));
            }
        }
    }
    spans.into_iter().filter(|((_, q), _)| lo <= *q && *q <= hi).map(|(k, e)| (k, e.rank())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_solver() {
        // P(-3) ⊕ M(-1)-free block λ = 1: a=b=c=d=0, p=1
        let d = BlockData { top: 1, bot: 2, ker_e: 1, ker_f: 0, r: 1, p: 1 };
        assert_eq!(d.solve(), Some([0, 0, 0, 0, 1]));
        // L(2) ⊕ M*(2)
        let d = BlockData { top: 2, bot: 1, ker_e: 0, ker_f: 2, r: 0, p: 0 };
        assert_eq!(d.solve(), Some([1, 0, 0, 1, 0]));
        // inconsistent data is rejected
        let d = BlockData { top: 3, bot: 0, ker_e: 0, ker_f: 0, r: 0, p: 0 };
        assert_eq!(d.solve(), None);
    }
}
