use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use super::window::{monomials, Window};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{kernel, Echelon, PMat, SVec};
use crate::ring::{sl2_on_base, Exps, Field, Poly, Scalar, Sl2};

/// The k-linear piece of a chain group in one q-degree: `⊕_j R_{q - q_j} b_j`.
#[derive(Clone, Debug)]
pub struct Piece {
    pub t: i64,
    pub q: i64,
    pub basis: Vec<(usize, Exps)>,
    index: HashMap<(usize, Exps), usize>,
    /// Cycle representatives of a homology basis.
    pub reps: Vec<SVec>,
    /// Boundaries inserted untagged, then the representatives tagged by their position.
    reducer: Echelon,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Homology coordinates of a cycle.
    pub fn coords(&self, v: &SVec) -> Option<SVec> {
        self.reducer.decompose(v)
    }

    pub fn position(&self, j: usize, m: &Exps) -> Option<usize> {
        self.index.get(&(j, m.clone())).copied()
    }
}

/// Degreewise homology of a complex over `R` on a q-window, with chain-level operators
/// pushed to homology.
#[derive(Debug)]
pub struct Homology {
    pub complex: ChainComplex,
    pub window: Window,
    pieces: BTreeMap<(i64, i64), Piece>,
    cache: Mutex<HashMap<(Sl2, i64, i64), Option<Vec<SVec>>>>,
}

impl Clone for Homology {
    fn clone(&self) -> Homology {
        Homology {
            complex: self.complex.clone(),
            window: self.window,
            pieces: self.pieces.clone(),
            cache: Mutex::new(self.cache.lock().unwrap().clone()),
        }
    }
}

fn key_basis(c: &ChainComplex, t: i64, q: i64) -> Vec<(usize, Exps)> {
    let mut out = Vec::new();
    if let Some(gs) = c.degs.get(&t) {
        for (j, &qj) in gs.iter().enumerate() {
            for m in monomials(c.n, q - qj) {
                if c.alive(&m) {
                    out.push((j, m));
                }
            }
        }
    }
    out
}

/// Image of `Σ v_k (m_k b_{j_k})` under an `R`-linear map given by `mat`, expressed in `tgt`.
fn apply_rlinear(cx: &ChainComplex, src: &Piece, tgt: &Piece, mat: &PMat, v: &SVec, f: &Field) -> SVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (k, c) in v {
        let (j, m) = &src.basis[*k];
        let mono = Poly::monomial(m.clone(), f.one());
        for i in 0..mat.rows {
            let e = mat.get(i, *j);
            if e.is_zero() {
                continue;
            }
            for (ex, a) in e.mul(&mono).terms() {
                if !cx.alive(ex) {
                    continue;
                }
                let pos = tgt.position(i, ex).expect("image inside the target piece");
                let slot = acc.entry(pos).or_insert_with(|| f.zero());
                *slot = slot.add(&a.mul(c));
            }
        }
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl Homology {
    pub fn new(complex: &ChainComplex, window: Window) -> Homology {
        let f = complex.field;
        let ts: Vec<i64> = complex.degs.keys().copied().collect();
        let keys: Vec<(i64, i64)> =
            ts.iter().flat_map(|&t| (window.qmin..=window.qmax).map(move |q| (t, q))).collect();
        let bases = exec::map(&keys, |&(t, q)| key_basis(complex, t, q));
        let mut shells: BTreeMap<(i64, i64), Piece> = BTreeMap::new();
        for (&(t, q), basis) in keys.iter().zip(bases) {
            if basis.is_empty() {
                continue;
            }
            let index = basis.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
            shells.insert((t, q), Piece { t, q, basis, index, reps: vec![], reducer: Echelon::new(f) });
        }
        let live: Vec<(i64, i64)> = shells.keys().copied().collect();
        // columns of d on every piece
        let dcols: Vec<Vec<SVec>> = exec::map(&live, |&(t, q)| {
            let src = &shells[&(t, q)];
            match (shells.get(&(t + 1, q)), complex.d.get(&t)) {
                (Some(tgt), Some(d)) => {
                    (0..src.basis.len()).map(|k| apply_rlinear(complex, src, tgt, d, &vec![(k, f.one())], &f)).collect()
                }
                _ => vec![Vec::new(); src.basis.len()],
            }
        });
        let dmap: HashMap<(i64, i64), Vec<SVec>> = live.iter().copied().zip(dcols).collect();
        let solved: Vec<(Vec<SVec>, Echelon)> = exec::map(&live, |&(t, q)| {
            let cycles = kernel(f, &dmap[&(t, q)]);
            let mut ech = Echelon::new(f);
            if let Some(prev) = dmap.get(&(t - 1, q)) {
                for b in prev {
                    ech.insert(b, Vec::new());
                }
            }
            let mut reps = Vec::new();
            for z in cycles {
                let tag = vec![(reps.len(), f.one())];
                if ech.insert(&z, tag).is_none() {
                    reps.push(z);
                }
            }
            (reps, ech)
        });
        for (key, (reps, ech)) in live.iter().zip(solved) {
            let p = shells.get_mut(key).unwrap();
            p.reps = reps;
            p.reducer = ech;
        }
        Homology { complex: complex.clone(), window, pieces: shells, cache: Mutex::new(HashMap::new()) }
    }

    /// Homology with the default window around the generators.
    pub fn with_default_window(complex: &ChainComplex) -> Homology {
        let qs: Vec<i64> = complex.degs.values().flatten().copied().collect();
        let (lo, hi) = (qs.iter().min().copied().unwrap_or(0), qs.iter().max().copied().unwrap_or(0));
        Homology::new(complex, Window::around(lo, hi, complex.n))
    }

    pub fn field(&self) -> Field {
        self.complex.field
    }

    pub fn piece(&self, t: i64, q: i64) -> Option<&Piece> {
        self.pieces.get(&(t, q))
    }

    pub fn dim(&self, t: i64, q: i64) -> usize {
        self.piece(t, q).map_or(0, |p| p.dim())
    }

    /// Nonzero dimensions `(t, q) ↦ dim`.
    pub fn dims(&self) -> BTreeMap<(i64, i64), usize> {
        self.pieces.iter().filter(|(_, p)| p.dim() > 0).map(|(k, p)| (*k, p.dim())).collect()
    }

    /// Dimensions restricted to the certified sub-window.
    pub fn certified_dims(&self) -> BTreeMap<(i64, i64), usize> {
        self.dims().into_iter().filter(|((_, q), _)| self.window.is_certified(*q)).collect()
    }

    pub fn degrees(&self) -> Vec<i64> {
        let mut ts: Vec<i64> = self.dims().keys().map(|k| k.0).collect();
        ts.dedup();
        ts
    }

    /// `Σ_t (-1)^t dim H^{t,q}` for each certified `q`.
    pub fn euler(&self) -> BTreeMap<i64, i64> {
        let mut out = BTreeMap::new();
        let (lo, hi) = self.window.certified();
        for q in lo..=hi {
            let mut s = 0;
            for &t in self.complex.degs.keys() {
                let d = self.dim(t, q) as i64;
                s += if t.rem_euclid(2) == 0 { d } else { -d };
            }
            out.insert(q, s);
        }
        out
    }

    /// Chain-level action of `g` on a vector of piece `(t, q)`; `None` when the target
    /// q-degree is outside the window.
    pub fn chain_sl2(&self, g: Sl2, t: i64, q: i64, v: &SVec) -> Option<SVec> {
        let f = self.field();
        let src = self.piece(t, q)?;
        let q2 = q + g.q_shift();
        let Some(tgt) = self.piece(t, q2) else {
            return if self.window.contains(q2) { Some(Vec::new()) } else { None };
        };
        let m = self.complex.m_at(t, g);
        let mut out = apply_rlinear(&self.complex, src, tgt, &m, v, &f);
        // g acting on the coefficients
        let mut acc: BTreeMap<usize, Scalar> = out.drain(..).collect();
        for (k, c) in v {
            let (j, mono) = &src.basis[*k];
            let gm = sl2_on_base(g, &Poly::monomial(mono.clone(), f.one()), self.complex.n, &f);
            for (ex, a) in gm.terms() {
                if !self.complex.alive(ex) {
                    continue;
                }
                let pos = tgt.position(*j, ex).expect("degree bookkeeping");
                let slot = acc.entry(pos).or_insert_with(|| f.zero());
                *slot = slot.add(&a.mul(c));
            }
        }
        Some(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Chain-level action of an `R`-linear endomorphism of degree `deg` given per homological degree.
    pub fn chain_rlinear(&self, mats: &BTreeMap<i64, PMat>, deg: i64, t: i64, q: i64, v: &SVec) -> Option<SVec> {
        let src = self.piece(t, q)?;
        let q2 = q + deg;
        let Some(tgt) = self.piece(t, q2) else {
            return if self.window.contains(q2) { Some(Vec::new()) } else { None };
        };
        let m = mats.get(&t)?;
        Some(apply_rlinear(&self.complex, src, tgt, m, v, &self.field()))
    }

    fn push_down(&self, t: i64, q: i64, imgs: Vec<Option<SVec>>) -> Option<Vec<SVec>> {
        let mut cols = Vec::with_capacity(imgs.len());
        for img in imgs {
            let img = img?;
            if img.is_empty() {
                cols.push(Vec::new());
                continue;
            }
            let tgt = self.piece(t, q)?;
            cols.push(tgt.coords(&img).expect("image of a cycle is a cycle"));
        }
        Some(cols)
    }

    /// Matrix (columns) of `g` from `H^{t,q}` to `H^{t,q+shift}`; `None` outside the window.
    pub fn sl2_matrix(&self, g: Sl2, t: i64, q: i64) -> Option<Vec<SVec>> {
        if let Some(m) = self.cache.lock().unwrap().get(&(g, t, q)) {
            return m.clone();
        }
        let p = self.piece(t, q)?;
        let imgs = p.reps.iter().map(|r| self.chain_sl2(g, t, q, r)).collect();
        let m = self.push_down(t, q + g.q_shift(), imgs);
        self.cache.lock().unwrap().insert((g, t, q), m.clone());
        m
    }

    /// Matrix of multiplication by `E_i`.
    pub fn ring_matrix(&self, i: usize, t: i64, q: i64) -> Option<Vec<SVec>> {
        let f = self.field();
        let p = self.piece(t, q)?;
        let dim = self.complex.dim(t);
        let mut m = PMat::zero(dim, dim);
        for j in 0..dim {
            m.set(j, j, Poly::var(i - 1, &f));
        }
        let mats = BTreeMap::from([(t, m)]);
        let imgs = p.reps.iter().map(|r| self.chain_rlinear(&mats, 2 * i as i64, t, q, r)).collect();
        self.push_down(t, q + 2 * i as i64, imgs)
    }

    /// Matrix of an `R`-linear chain endomorphism.
    pub fn rlinear_matrix(&self, mats: &BTreeMap<i64, PMat>, deg: i64, t: i64, q: i64) -> Option<Vec<SVec>> {
        let p = self.piece(t, q)?;
        let imgs = p.reps.iter().map(|r| self.chain_rlinear(mats, deg, t, q, r)).collect();
        self.push_down(t, q + deg, imgs)
    }

    /// The scalar by which `h` acts on `H^{t,q}`; an error if it is not scalar.
    pub fn weight(&self, t: i64, q: i64) -> Result<Option<Scalar>> {
        let Some(p) = self.piece(t, q) else { return Ok(None) };
        if p.dim() == 0 {
            return Ok(None);
        }
        let cols = self.sl2_matrix(Sl2::H, t, q).expect("h preserves q");
        let mut w: Option<Scalar> = None;
        for (k, col) in cols.iter().enumerate() {
            let diag = col.iter().find(|(i, _)| *i == k).map(|(_, c)| c.clone()).unwrap_or_else(|| self.field().zero());
            if col.iter().any(|(i, _)| *i != k) || w.as_ref().is_some_and(|w| *w != diag) {
                return Err(Error::Inconsistent(format!("h is not scalar on H^({t},{q})")));
            }
            w = Some(diag);
        }
        Ok(w)
    }

    /// Checks `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h` on every certified piece.
    pub fn check_sl2_relations(&self) -> Result<()> {
        let f = self.field();
        for (&(t, q), p) in &self.pieces {
            if p.dim() == 0 || !self.window.is_certified(q) {
                continue;
            }
            let n = p.dim();
            let unit = |k: usize| vec![(k, f.one())];
            for k in 0..n {
                let v = unit(k);
                let apply = |g: Sl2, q: i64, v: &SVec| -> SVec {
                    if v.is_empty() {
                        return Vec::new();
                    }
                    let cols = self.sl2_matrix(g, t, q).expect("certified");
                    crate::linalg::apply(f, &cols, v)
                };
                let comm = |a: Sl2, b: Sl2| -> SVec {
                    let ab = apply(a, q + b.q_shift(), &apply(b, q, &v));
                    let ba = apply(b, q + a.q_shift(), &apply(a, q, &v));
                    crate::linalg::axpy(&ab, &f.int(-1), &ba)
                };
                let e = apply(Sl2::E, q, &v);
                let ff = apply(Sl2::F, q, &v);
                let h = apply(Sl2::H, q, &v);
                let checks = [
                    ("[h,e] = 2e", crate::linalg::axpy(&comm(Sl2::H, Sl2::E), &f.int(-2), &e)),
                    ("[h,f] = -2f", crate::linalg::axpy(&comm(Sl2::H, Sl2::F), &f.int(2), &ff)),
                    ("[e,f] = h", crate::linalg::axpy(&comm(Sl2::E, Sl2::F), &f.int(-1), &h)),
                ];
                for (name, d) in checks {
                    if !d.is_empty() {
                        return Err(Error::Inconsistent(format!("{name} fails on H^({t},{q})")));
                    }
                }
            }
        }
        Ok(())
    }
}
