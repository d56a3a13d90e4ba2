//! State spaces of circles, thick circles and theta webs, and the matrices of foam words
//! between them.
//!
//! A thin circle is `R[x]/P(x)` with `P(t) = Σ (-1)^k E_k t^{N-k}`. A theta web is the flag
//! ring: `x` a root of `P`, `y` a root of `P(t)/(t - x)`. A thick circle is the symmetric part
//! of the theta ring, with basis the monomial symmetric functions `m_λ(x, y)`, `λ_1 ≤ N-2`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use smallvec::SmallVec;

use super::space::Twist;
use super::tower::{pair_relation, root_relation, Tower, TowerVar};
use crate::complex::ChainComplex;
use crate::error::{Error, Result};
use crate::homology::{Homology, Window};
use crate::linalg::{solve, PMat, SVec};
use crate::ring::{sl2_on_base, Exps, Field, LaurentQ, Poly, Scalar, Sl2};
use crate::webfoam::{
    dot_twist, BasicFoam, Decoration, DotKind, FoamKind, FoamLinComb, FoamWord, GreenDot, GreenDottedWeb, Params, Shape, Web,
};

/// Free graded `k[E]`-module of a web made of the supported components.
#[derive(Clone, Debug)]
pub struct WebSpace {
    pub web: Web,
    pub tower: Arc<Tower>,
    /// Tower variables (0-based) of each component: `[x]` or `[x, y]`.
    pub comp_vars: Vec<Vec<usize>>,
    pub basis: Vec<Poly>,
    pub degrees: Vec<i64>,
    keys: HashMap<Exps, usize>,
}

fn shift(s: Shape, n: i64) -> i64 {
    match s {
        Shape::Circle(1) => 1 - n,
        Shape::Circle(_) => 4 - 2 * n,
        Shape::Theta => 3 - 2 * n,
    }
}

impl WebSpace {
    pub fn new(web: &Web, n: usize, field: Field) -> Result<WebSpace> {
        if n < 2 {
            return Err(Error::Invalid("state spaces need N ≥ 2".into()));
        }
        web.validate()?;
        if web.shapes().iter().any(|s| matches!(s, Shape::Circle(a) if *a > 2)) {
            return Err(Error::Unsupported("circles of thickness above 2".into()));
        }
        let mut vars = Vec::new();
        let mut comp_vars = Vec::new();
        for s in web.shapes() {
            let x = vars.len();
            vars.push(TowerVar { name: format!("x{x}"), deg: n as u8, rel: root_relation(&field, n, n + x) });
            if s == Shape::Circle(1) {
                comp_vars.push(vec![x]);
            } else {
                vars.push(TowerVar { name: format!("x{}", x + 1), deg: (n - 1) as u8, rel: pair_relation(&field, n, n + x, n + x + 1) });
                comp_vars.push(vec![x, x + 1]);
            }
        }
        let tower = Arc::new(Tower::new(field, n, vars));
        // per component: (basis poly, key exponents on its variables, polynomial degree)
        let mut factors: Vec<Vec<(Poly, Vec<(usize, u8)>, i64)>> = Vec::new();
        for (s, cv) in web.shapes().into_iter().zip(&comp_vars) {
            let v = |i: usize| tower.var(cv[i]);
            let g = |i: usize| n + cv[i];
            let mut list = Vec::new();
            match s {
                Shape::Circle(1) => {
                    for i in 0..n as u8 {
                        list.push((v(0).pow(i as u32, &field), vec![(g(0), i)], 2 * i as i64));
                    }
                }
                Shape::Theta => {
                    for i in 0..n as u8 {
                        for j in 0..(n - 1) as u8 {
                            let p = v(0).pow(i as u32, &field).mul(&v(1).pow(j as u32, &field));
                            list.push((p, vec![(g(0), i), (g(1), j)], 2 * (i + j) as i64));
                        }
                    }
                }
                Shape::Circle(_) => {
                    for l1 in 0..(n - 1) as u8 {
                        for l2 in 0..=l1 {
                            let mono = |a: u8, b: u8| v(0).pow(a as u32, &field).mul(&v(1).pow(b as u32, &field));
                            let m = if l1 == l2 { mono(l1, l2) } else { mono(l1, l2).add(&mono(l2, l1)) };
                            list.push((m, vec![(g(0), l1), (g(1), l2)], 2 * (l1 + l2) as i64));
                        }
                    }
                }
            }
            factors.push(list);
        }
        let base: i64 = web.shapes().into_iter().map(|s| shift(s, n as i64)).sum();
        let mut basis = vec![Poly::one(&field)];
        let mut keys_list: Vec<Vec<(usize, u8)>> = vec![vec![]];
        let mut degrees = vec![base];
        for list in &factors {
            let mut nb = Vec::new();
            let mut nk = Vec::new();
            let mut nd = Vec::new();
            for ((b, k), d) in basis.iter().zip(&keys_list).zip(&degrees) {
                for (p, kk, dd) in list {
                    nb.push(b.mul(p));
                    let mut key = k.clone();
                    key.extend(kk.iter().copied());
                    nk.push(key);
                    nd.push(d + dd);
                }
            }
            basis = nb;
            keys_list = nk;
            degrees = nd;
        }
        let keys = keys_list.iter().enumerate().map(|(j, k)| (exps(k), j)).collect();
        Ok(WebSpace { web: web.clone(), tower, comp_vars, basis, degrees, keys })
    }

    pub fn field(&self) -> Field {
        self.tower.field
    }

    pub fn n(&self) -> usize {
        self.tower.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn graded_rank(&self) -> LaurentQ {
        LaurentQ::from_coeffs(self.degrees.iter().map(|&d| (d, 1)))
    }

    fn is_key(&self, top: &Exps) -> bool {
        self.web.shapes().iter().zip(&self.comp_vars).all(|(s, cv)| {
            *s != Shape::Circle(2) || {
                let k = |i: usize| top.get(self.n() + cv[i]).copied().unwrap_or(0);
                k(0) >= k(1)
            }
        })
    }

    /// Coordinates of an element of the space.
    pub fn coords(&self, p: &Poly) -> Vec<Poly> {
        let n = self.n();
        let r = self.tower.reduce(p);
        let mut v = vec![Poly::zero(); self.rank()];
        for (e, c) in r.terms() {
            let base: Exps = e.iter().take(n).copied().collect();
            let mut top: Exps = e.clone();
            for k in top.iter_mut().take(n) {
                *k = 0;
            }
            while top.last() == Some(&0) {
                top.pop();
            }
            if !self.is_key(&top) {
                continue;
            }
            let j = *self.keys.get(&top).unwrap_or_else(|| panic!("{e:?} is not in the span of the basis"));
            v[j].add_term(base, c.clone());
        }
        v
    }

    fn column_matrix(&self, cols: Vec<Vec<Poly>>, rows: usize) -> PMat {
        let mut m = PMat::zero(rows, cols.len());
        for (j, col) in cols.into_iter().enumerate() {
            for (i, c) in col.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// The action induced by foams: the cup twist `-½((N-a) p_1 + a p̄_1)`, `a(N-a)` of every
    /// component, and on a theta web also the digon-cup twist `-t_1 x - t_2 y`, `t_1 + t_2`.
    pub fn natural_twist(&self, p: &Params) -> Twist {
        let f = self.field();
        let n = self.n() as i64;
        let half = f.frac(-1, 2).expect("odd characteristic");
        let e1 = self.tower.e(1);
        let mut tw = Twist::zero(&f);
        for (s, cv) in self.web.shapes().into_iter().zip(&self.comp_vars) {
            let a = if s == Shape::Circle(1) { 1 } else { 2 };
            let p1 = cv.iter().fold(Poly::zero(), |acc, &i| acc.add(&self.tower.var(i)));
            let cup = p1.scale(&f.int(n - a)).add(&e1.sub(&p1).scale(&f.int(a))).scale(&half);
            tw = tw.add(&Twist { f: cup, h: f.int(a * (n - a)) });
            if s == Shape::Theta {
                let d = self.tower.var(cv[0]).scale(&p.t1).add(&self.tower.var(cv[1]).scale(&p.t2)).neg();
                tw = tw.add(&Twist { f: d, h: p.t1.add(&p.t2) });
            }
        }
        tw.f = self.tower.reduce(&tw.f);
        tw
    }

    /// Twist of the green dots of a web on this space.
    pub fn twist_of(&self, g: &GreenDottedWeb, p: &Params) -> Result<Twist> {
        let mut tw = Twist::zero(&self.field());
        for dot in &g.dots {
            let (decos, h) = dot_twist(&g.web, dot, p)?;
            let mut f = Poly::zero();
            for (c, d) in decos {
                f.add_assign(&self.decoration_poly(&d)?.scale(&c));
            }
            tw = tw.add(&Twist { f, h });
        }
        Ok(tw)
    }

    /// Connection matrix `M_g` of the action `g(Σ r_j b_j) = Σ g(r_j) b_j + r_j M_g b_j`.
    pub fn sl2_matrix(&self, g: Sl2, twist: &Twist) -> PMat {
        let t = &self.tower;
        let cols = self
            .basis
            .iter()
            .map(|b| {
                let mut img = t.act(g, b);
                match g {
                    Sl2::E => {}
                    Sl2::F => img = img.add(&t.mul(&twist.f, b)),
                    Sl2::H => img = img.add(&b.scale(&twist.h)),
                }
                self.coords(&img)
            })
            .collect();
        self.column_matrix(cols, self.rank())
    }

    /// The decoration as an element of the tower ring.
    pub fn decoration_poly(&self, d: &Decoration) -> Result<Poly> {
        let f = self.field();
        let n = self.n();
        let mut images: Vec<Poly> = Vec::new();
        if let Some(c) = d.comp {
            let cv = self.comp_vars.get(c).ok_or_else(|| Error::Location(format!("no component {c}")))?;
            let shape = self.web.shape(c)?;
            let roots: Vec<usize> = match (shape, d.facet) {
                (Shape::Theta, 0) => vec![cv[0]],
                (Shape::Theta, 1) => vec![cv[1]],
                _ => cv.clone(),
            };
            if roots.len() != d.thickness as usize {
                return Err(Error::Location("decoration thickness does not match its facet".into()));
            }
            images.extend(roots.iter().map(|&i| self.tower.var(i)));
        }
        images.extend((1..=n).map(|k| self.tower.e(k)));
        // E_k beyond N vanish
        let extra = d.poly.max_var() + 1;
        while images.len() < extra {
            images.push(Poly::zero());
        }
        Ok(self.tower.reduce(&d.poly.subst(&images, &f)))
    }
}

fn exps(k: &[(usize, u8)]) -> Exps {
    let mut e: Exps = SmallVec::new();
    for &(i, v) in k {
        if e.len() <= i {
            e.resize(i + 1, 0);
        }
        e[i] = v;
    }
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

/// Homogeneous `k[E]`-linear map between web state spaces.
#[derive(Clone, Debug)]
pub struct GradedMap {
    pub source: Arc<WebSpace>,
    pub target: Arc<WebSpace>,
    pub degree: i64,
    pub matrix: PMat,
}

impl GradedMap {
    /// Every entry has degree `degree + deg(source column) - deg(target row)`.
    pub fn is_homogeneous(&self) -> bool {
        let a = crate::ring::base_alphabet(self.source.n());
        (0..self.matrix.rows).all(|i| {
            (0..self.matrix.cols).all(|j| {
                let p = self.matrix.get(i, j);
                p.is_zero()
                    || (p.is_homogeneous(&a)
                        && p.degree(&a) == Some(self.degree + self.source.degrees[j] - self.target.degrees[i]))
            })
        })
    }
}

/// Variables of the source tower renamed into the target tower (`None`: consumed by the slice).
fn carry(src: &WebSpace, tgt: &WebSpace, comp_map: &[Option<usize>]) -> Vec<Poly> {
    let f = src.field();
    let n = src.n();
    let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(i, &f)).collect();
    let total: usize = src.comp_vars.iter().map(|v| v.len()).sum();
    images.resize(n + total, Poly::zero());
    for (c, cv) in src.comp_vars.iter().enumerate() {
        if let Some(t) = comp_map[c] {
            for (k, &i) in cv.iter().enumerate().take(tgt.comp_vars[t].len()) {
                images[n + i] = tgt.tower.var(tgt.comp_vars[t][k]);
            }
        }
    }
    images
}

/// Source component `c` ↦ its target component, following the slice's relabeling.
fn component_map(s: &BasicFoam) -> Vec<Option<usize>> {
    let m = s.source.component_count();
    let shifted = |removed: usize| -> Vec<Option<usize>> {
        (0..m).map(|c| if c == removed { None } else { Some(if c > removed { c - 1 } else { c }) }).collect()
    };
    match &s.kind {
        FoamKind::Cap => shifted(s.loc[0]),
        FoamKind::Saddle | FoamKind::Zip if s.loc.len() == 2 => {
            let (lo, hi) = (s.loc[0].min(s.loc[1]), s.loc[0].max(s.loc[1]));
            let mut v = shifted(hi);
            v[hi] = Some(lo);
            v
        }
        FoamKind::Isotopy(perm) => {
            let mut v = vec![None; m];
            for (i, &p) in perm.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        }
        _ => (0..m).map(Some).collect(),
    }
}

/// `(P(a) - P(b))/(a - b) = Σ_k (-1)^k E_k h_{N-1-k}(a, b)`.
fn comultiplication(t: &Tower, a: &Poly, b: &Poly) -> Poly {
    let f = t.field;
    let n = t.n;
    let h = |m: usize| (0..=m).fold(Poly::zero(), |acc, i| acc.add(&a.pow(i as u32, &f).mul(&b.pow((m - i) as u32, &f))));
    let mut out = Poly::zero();
    for k in 0..n {
        let term = t.e(k).mul(&h(n - 1 - k));
        out = if k % 2 == 0 { out.add(&term) } else { out.sub(&term) };
    }
    out
}

/// Divided difference `(g - g|_{x↔y})/(x - y)` in tower variables `x`, `y` (global indices).
fn divided_difference(g: &Poly, x: usize, y: usize, f: &Field) -> Poly {
    let mut out = Poly::zero();
    for (e, c) in g.terms() {
        let i = e.get(x).copied().unwrap_or(0);
        let j = e.get(y).copied().unwrap_or(0);
        if i == j {
            continue;
        }
        let mut rest = e.clone();
        rest.resize(rest.len().max(x.max(y) + 1), 0);
        let lo = i.min(j);
        rest[x] = lo;
        rest[y] = lo;
        let d = (i.max(j) - lo) as usize;
        // (x^d - y^d)/(x - y) = h_{d-1}(x, y)
        let sign = if i > j { f.one() } else { f.int(-1) };
        for k in 0..d {
            let mut m = rest.clone();
            m[x] += k as u8;
            m[y] += (d - 1 - k) as u8;
            out.add_term(m, c.mul(&sign));
        }
    }
    out
}

/// Matrix of one slice.
pub fn slice_matrix(s: &BasicFoam, src: &WebSpace, tgt: &WebSpace) -> Result<PMat> {
    let f = src.field();
    let n = src.n();
    let cm = component_map(s);
    let images = carry(src, tgt, &cm);
    let tv = |c: usize, k: usize| tgt.tower.var(tgt.comp_vars[c][k]);
    let sv = |c: usize, k: usize| n + src.comp_vars[c][k];
    let mut weight = Poly::one(&f);
    let mut pre: Box<dyn Fn(&Poly) -> Result<Poly>> = Box::new(|p: &Poly| Ok(p.clone()));
    let mut images = images;
    match &s.kind {
        FoamKind::Decoration(d) => weight = tgt.decoration_poly(d)?,
        FoamKind::Cup | FoamKind::Isotopy(_) | FoamKind::DigonCup => {}
        FoamKind::Cap => {
            let c = s.loc[0];
            let thick = src.web.shape(c)? == Shape::Circle(2);
            let (x, y) = (sv(c, 0), if thick { sv(c, 1) } else { 0 });
            let top = |k: usize| (n - 1 - k) as u8;
            let tower = src.tower.clone();
            let xp = tower.var(src.comp_vars[c][0]);
            pre = Box::new(move |p: &Poly| {
                // ε extracts the top class; on a thick circle ε(g) = ε_Θ(x g)
                let g = if thick { tower.mul(&xp, p) } else { tower.reduce(p) };
                let mut out = Poly::zero();
                for (e, coef) in g.terms() {
                    let ok = e.get(x).copied().unwrap_or(0) == top(0) && (!thick || e.get(y).copied().unwrap_or(0) == top(1));
                    if ok {
                        let mut m = e.clone();
                        m.resize(m.len().max(x.max(y) + 1), 0);
                        m[x] = 0;
                        if thick {
                            m[y] = 0;
                        }
                        out.add_term(m, coef.clone());
                    }
                }
                Ok(out)
            });
        }
        FoamKind::Saddle if s.loc.len() == 2 => {}
        FoamKind::Saddle => {
            let c = s.loc[0];
            if src.web.shape(c)? != Shape::Circle(1) {
                return Err(Error::Unsupported("splitting saddles on thick circles".into()));
            }
            let new = tgt.web.component_count() - 1;
            weight = comultiplication(&tgt.tower, &tv(c, 0), &tv(new, 0));
        }
        FoamKind::DigonCap => {
            let c = s.loc[0];
            let (x, y) = (sv(c, 0), sv(c, 1));
            let tower = src.tower.clone();
            pre = Box::new(move |p: &Poly| Ok(divided_difference(&tower.reduce(p), x, y, &f)));
        }
        FoamKind::Zip => {
            let (c1, c2) = (s.loc[0], s.loc[1]);
            let t = c1.min(c2);
            images[sv(c1, 0)] = tv(t, 0);
            images[sv(c2, 0)] = tv(t, 1);
        }
        FoamKind::Unzip => {
            let c = s.loc[0];
            let new = tgt.web.component_count() - 1;
            images[sv(c, 0)] = tv(c, 0);
            images[sv(c, 1)] = tv(new, 0);
            weight = tv(c, 0).sub(&tv(new, 0));
        }
        FoamKind::Assoc | FoamKind::Coassoc => return Err(Error::Unsupported("associativity foams".into())),
    }
    let mut cols = Vec::with_capacity(src.rank());
    for b in &src.basis {
        let p = pre(b)?;
        let img = tgt.tower.mul(&p.subst(&images, &f), &weight);
        cols.push(tgt.coords(&img));
    }
    Ok(tgt.column_matrix(cols, tgt.rank()))
}

/// Matrix of a foam word, with its degree.
pub fn foam_matrix(w: &FoamWord, n: usize, field: Field) -> Result<GradedMap> {
    let source = Arc::new(WebSpace::new(&w.source.web, n, field)?);
    let mut cur = source.clone();
    let mut m = PMat::identity(source.rank(), &field);
    for s in &w.slices {
        let next = if s.target == cur.web { cur.clone() } else { Arc::new(WebSpace::new(&s.target, n, field)?) };
        m = slice_matrix(s, &cur, &next)?.mul(&m);
        cur = next;
    }
    Ok(GradedMap { source, target: cur, degree: w.degree(n)?, matrix: m })
}

/// `Σ c · M_F`; `None` for the empty combination.
pub fn lincomb_matrix(l: &FoamLinComb, n: usize, field: Field) -> Result<Option<PMat>> {
    let mut out: Option<PMat> = None;
    for (c, w) in &l.terms {
        let m = foam_matrix(w, n, field)?.matrix.scale(c);
        out = Some(match out {
            Some(o) => o.add(&m),
            None => m,
        });
    }
    Ok(out)
}

/// `g(M_F) + G_tgt M_F - M_F G_src`, the actions twisted by the green dots of the ends. It
/// vanishes exactly when the map of `F` is a map of sl2-modules.
pub fn commutator(g: Sl2, w: &FoamWord, p: &Params) -> Result<PMat> {
    let m = foam_matrix(w, p.n, p.field)?;
    let gs = m.source.natural_twist(p).add(&m.source.twist_of(&w.source, p)?);
    let gt = m.target.natural_twist(p).add(&m.target.twist_of(&w.target, p)?);
    let ms = m.source.sl2_matrix(g, &gs);
    let mt = m.target.sl2_matrix(g, &gt);
    Ok(m.matrix.map_entries(|e| sl2_on_base(g, e, p.n, &p.field)).add(&mt.mul(&m.matrix)).sub(&m.matrix.mul(&ms)))
}

/// `[G, M_F] - M_{g * F}`: zero when the matrices realize the action on foams.
pub fn action_defect(g: Sl2, w: &FoamWord, p: &Params) -> Result<PMat> {
    let comm = commutator(g, w, p)?;
    let star = crate::webfoam::sl2_on_word(g, w, p)?;
    Ok(match lincomb_matrix(&star, p.n, p.field)? {
        Some(s) => comm.sub(&s),
        None => comm,
    })
}

/// A green dot whose multiplicity is to be solved for.
#[derive(Clone, Debug, PartialEq)]
pub struct DotSlot {
    pub at_target: bool,
    pub edge: usize,
    pub kind: DotKind,
}

/// Multiplicities of the slots making the map of `w` sl2-linear, and the dimension of the
/// solution space. The commutator is affine in the multiplicities.
pub fn solve_dots(w: &FoamWord, slots: &[DotSlot], p: &Params) -> Result<(Vec<Scalar>, usize)> {
    let f = p.field;
    let with = |mults: &[Scalar]| -> FoamWord {
        let mut v = w.clone();
        for (s, m) in slots.iter().zip(mults) {
            let d = GreenDot { edge: Some(s.edge), kind: s.kind, mult: m.clone() };
            if s.at_target {
                v.target.dots.push(d);
            } else {
                v.source.dots.push(d);
            }
        }
        v
    };
    let flat = |mults: &[Scalar]| -> Result<BTreeMap<(usize, usize, usize, Exps), Scalar>> {
        let mut out = BTreeMap::new();
        for (k, g) in [Sl2::F, Sl2::H].into_iter().enumerate() {
            let d = commutator(g, &with(mults), p)?;
            for i in 0..d.rows {
                for j in 0..d.cols {
                    for (e, c) in d.get(i, j).terms() {
                        out.insert((k, i, j, e.clone()), c.clone());
                    }
                }
            }
        }
        Ok(out)
    };
    let zero = vec![f.zero(); slots.len()];
    let base = flat(&zero)?;
    let mut cols = Vec::new();
    for k in 0..slots.len() {
        let mut unit = zero.clone();
        unit[k] = f.one();
        let mut d = flat(&unit)?;
        for (key, c) in &base {
            let e = d.entry(key.clone()).or_insert_with(|| f.zero());
            *e = e.sub(c);
        }
        cols.push(d);
    }
    let mut rows: BTreeMap<(usize, usize, usize, Exps), usize> = BTreeMap::new();
    for key in base.keys().chain(cols.iter().flat_map(|c| c.keys())) {
        let next = rows.len();
        rows.entry(key.clone()).or_insert(next);
    }
    let svec = |m: &BTreeMap<(usize, usize, usize, Exps), Scalar>, sign: i64| -> SVec {
        let mut v: SVec = m.iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (rows[k], c.mul_int(sign))).collect();
        v.sort_by_key(|(i, _)| *i);
        v
    };
    let cols: Vec<SVec> = cols.iter().map(|c| svec(c, 1)).collect();
    let (x, ker) = solve(f, &cols, &svec(&base, -1))
        .ok_or_else(|| Error::NoEquivariantTwist(format!("no dot multiplicities make {} equivariant", w.target.web)))?;
    let mut out = zero;
    for (j, c) in x {
        out[j] = c;
    }
    Ok((out, ker.len()))
}

/// The space as a one-term complex, so the homology machinery materializes its k-linear pieces.
pub fn as_complex(v: &WebSpace, twist: &Twist) -> ChainComplex {
    let mut degs = BTreeMap::new();
    degs.insert(0, v.degrees.clone());
    let mut labels = BTreeMap::new();
    labels.insert(0, (0..v.rank()).map(|j| format!("b{j}")).collect());
    let mut sl2 = BTreeMap::new();
    sl2.insert(0, [v.sl2_matrix(Sl2::E, twist), v.sl2_matrix(Sl2::F, twist), v.sl2_matrix(Sl2::H, twist)]);
    ChainComplex { field: v.field(), n: v.n(), degs, labels, d: Default::default(), sl2, killed: vec![] }
}

/// `E_op`, `F_op`, `H_op` on the graded pieces of a state space inside a window.
pub fn sl2_ops(v: &WebSpace, twist: &Twist, window: Window) -> Result<Homology> {
    let lo = v.degrees.iter().min().copied().unwrap_or(0);
    if window.qmax < lo {
        return Err(Error::Window(format!("window ends at {} below the lowest generator {lo}", window.qmax)));
    }
    Ok(Homology::new(&as_complex(v, twist), window))
}

/// Flatness of a twist on a state space.
pub fn check_flat(t: &Twist, v: &WebSpace) -> bool {
    t.is_flat(&v.tower)
}
