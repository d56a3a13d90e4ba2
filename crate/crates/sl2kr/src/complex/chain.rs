use std::collections::BTreeMap;

use crate::linalg::PMat;
use crate::ring::{sl2_on_base, Field, Poly, Sl2};

pub fn sl2_index(g: Sl2) -> usize {
    match g {
        Sl2::E => 0,
        Sl2::F => 1,
        Sl2::H => 2,
    }
}

fn alive(killed: &[usize], e: &crate::ring::Exps) -> bool {
    killed.iter().all(|&i| e.get(i).copied().unwrap_or(0) == 0)
}

/// A bounded cochain complex of free graded `R = k[E_1..E_N]`-modules carrying an sl2-action
/// `g(Σ r_j b_j) = Σ g(r_j) b_j + r_j M_g b_j`, stored as the connection matrices `M_g`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub field: Field,
    pub n: usize,
    /// q-degrees of the generators in each homological degree.
    pub degs: BTreeMap<i64, Vec<i64>>,
    pub labels: BTreeMap<i64, Vec<String>>,
    /// `d[t]: C^t → C^{t+1}` (rows index `C^{t+1}`).
    pub d: BTreeMap<i64, PMat>,
    /// `sl2[t] = [M_e, M_f, M_h]` on `C^t`.
    pub sl2: BTreeMap<i64, [PMat; 3]>,
    /// Indices `i` with `E_{i+1}` specialized to zero (the base ring is `R/(E_i : i ∈ killed)`).
    pub killed: Vec<usize>,
}

/// First failure of an exact identity, with its location.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub degree: i64,
    pub row: usize,
    pub col: usize,
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} fails in degree {} at ({}, {})", self.check, self.degree, self.row, self.col)
    }
}

fn first_nonzero(m: &PMat) -> Option<(usize, usize)> {
    (0..m.rows).flat_map(|i| (0..m.cols).map(move |j| (i, j))).find(|&(i, j)| !m.get(i, j).is_zero())
}

impl ChainComplex {
    /// Whether a monomial survives the specialization.
    pub fn alive(&self, e: &crate::ring::Exps) -> bool {
        alive(&self.killed, e)
    }

    /// The complex over `R/(E_{i+1} : i ∈ killed)`. The sl2-action stays meaningful only when
    /// that ideal is sl2-stable (all `E_i` over `𝔽_p` with `p | N`).
    pub fn specialize(&self, killed: &[usize]) -> ChainComplex {
        let mut out = self.clone();
        out.killed.extend_from_slice(killed);
        out.killed.sort_unstable();
        out.killed.dedup();
        let killed = out.killed.clone();
        let keep = |p: &Poly| {
            let mut r = Poly::zero();
            for (e, c) in p.terms() {
                if alive(&killed, e) {
                    r.add_term(e.clone(), c.clone());
                }
            }
            r
        };
        out.d = self.d.iter().map(|(t, m)| (*t, m.map_entries(keep))).collect();
        out.sl2 = self.sl2.iter().map(|(t, ms)| (*t, ms.clone().map(|m| m.map_entries(keep)))).collect();
        out
    }

    pub fn dim(&self, t: i64) -> usize {
        self.degs.get(&t).map_or(0, |v| v.len())
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.degs.iter().filter(|(_, v)| !v.is_empty()).map(|(t, _)| *t).collect()
    }

    pub fn total_rank(&self) -> usize {
        self.degs.values().map(|v| v.len()).sum()
    }

    pub fn d_at(&self, t: i64) -> PMat {
        self.d.get(&t).cloned().unwrap_or_else(|| PMat::zero(self.dim(t + 1), self.dim(t)))
    }

    pub fn m_at(&self, t: i64, g: Sl2) -> PMat {
        self.sl2.get(&t).map(|m| m[sl2_index(g)].clone()).unwrap_or_else(|| PMat::zero(self.dim(t), self.dim(t)))
    }

    fn g_entries(&self, g: Sl2, m: &PMat) -> PMat {
        m.map_entries(|p| sl2_on_base(g, p, self.n, &self.field))
    }

    /// Whether every differential entry is homogeneous of degree zero.
    pub fn check_degrees(&self) -> Option<Failure> {
        let alpha = crate::ring::base_alphabet(self.n);
        for (&t, d) in &self.d {
            for i in 0..d.rows {
                for j in 0..d.cols {
                    let p = d.get(i, j);
                    if p.is_zero() {
                        continue;
                    }
                    let want = self.degs[&t][j] - self.degs[&(t + 1)][i];
                    if !p.is_homogeneous(&alpha) || p.degree(&alpha) != Some(want) {
                        return Some(Failure { check: "homogeneity".into(), degree: t, row: i, col: j });
                    }
                }
            }
        }
        None
    }

    pub fn check_d_squared(&self) -> Option<Failure> {
        for &t in self.d.keys() {
            let dd = self.d_at(t + 1).mul(&self.d_at(t));
            if let Some((row, col)) = first_nonzero(&dd) {
                return Some(Failure { check: "d∘d = 0".into(), degree: t, row, col });
            }
        }
        None
    }

    /// `g∘d = d∘g` for the three generators, as the exact identity
    /// `g(D) + M^{t+1} D - D M^t = 0`.
    pub fn check_equivariance(&self) -> Option<Failure> {
        for &t in self.d.keys() {
            let d = self.d_at(t);
            for g in Sl2::ALL {
                let defect = self.g_entries(g, &d).add(&self.m_at(t + 1, g).mul(&d)).sub(&d.mul(&self.m_at(t, g)));
                if let Some((row, col)) = first_nonzero(&defect) {
                    return Some(Failure { check: format!("{g:?}∘d = d∘{g:?}"), degree: t, row, col });
                }
            }
        }
        None
    }

    /// `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h` on every chain group, via
    /// `M_[a,b] = a(M_b) - b(M_a) + [M_a, M_b]`.
    pub fn check_sl2_relations(&self) -> Option<Failure> {
        let f = self.field;
        for &t in self.degs.keys() {
            let m = |g| self.m_at(t, g);
            let bracket = |a: Sl2, b: Sl2| {
                self.g_entries(a, &m(b)).sub(&self.g_entries(b, &m(a))).add(&m(a).mul(&m(b))).sub(&m(b).mul(&m(a)))
            };
            let checks = [
                ("[h,e] = 2e", bracket(Sl2::H, Sl2::E).sub(&m(Sl2::E).scale(&f.int(2)))),
                ("[h,f] = -2f", bracket(Sl2::H, Sl2::F).add(&m(Sl2::F).scale(&f.int(2)))),
                ("[e,f] = h", bracket(Sl2::E, Sl2::F).sub(&m(Sl2::H))),
            ];
            for (name, defect) in checks {
                if let Some((row, col)) = first_nonzero(&defect) {
                    return Some(Failure { check: name.into(), degree: t, row, col });
                }
            }
        }
        None
    }

    /// The constant `c` with `h b = (c - q) b` on every generator `b` of degree `q`, if there is one.
    pub fn h_offset(&self) -> Option<crate::ring::Scalar> {
        let mut c: Option<crate::ring::Scalar> = None;
        for (t, qs) in &self.degs {
            let m = self.m_at(*t, Sl2::H);
            for (j, &q) in qs.iter().enumerate() {
                for i in 0..m.rows {
                    let e = m.get(i, j);
                    if i != j {
                        if !e.is_zero() {
                            return None;
                        }
                        continue;
                    }
                    let diag = if e.is_zero() { self.field.zero() } else { e.as_constant()? };
                    let v = diag.add(&self.field.int(q));
                    match &c {
                        Some(x) if *x != v => return None,
                        _ => c = Some(v),
                    }
                }
            }
        }
        Some(c.unwrap_or_else(|| self.field.zero()))
    }

    /// Graded Euler characteristic of the generators, `Σ (-1)^t q^{deg}` (over `R`).
    pub fn generator_euler(&self) -> crate::ring::LaurentQ {
        let mut out = crate::ring::LaurentQ::zero();
        for (t, qs) in &self.degs {
            for &q in qs {
                out.add_term(q, if t.rem_euclid(2) == 0 { 1 } else { -1 });
            }
        }
        out
    }

    /// Removes all invertible scalar entries of the differentials by Gaussian elimination.
    pub fn simplify(&self) -> Simplified {
        let mut cur = self.clone();
        let f = self.field;
        let mut iota: BTreeMap<i64, PMat> = self.degs.keys().map(|&t| (t, PMat::identity(self.dim(t), &f))).collect();
        let mut pi = iota.clone();
        let mut homotopy: BTreeMap<i64, PMat> = BTreeMap::new();
        while let Some((t, r, c)) = cur.pivot() {
            let step = cur.eliminate(t, r, c);
            // h ← h + ι h_s π, then ι ← ι ι_s, π ← π_s π
            let add = iota[&t].mul(&step.h).mul(&pi[&(t + 1)]);
            let h = homotopy.entry(t).or_insert_with(|| PMat::zero(self.dim(t), self.dim(t + 1)));
            *h = h.add(&add);
            for (s, m) in step.iota {
                let full = iota[&s].mul(&m);
                iota.insert(s, full);
            }
            for (s, m) in step.pi {
                let full = m.mul(&pi[&s]);
                pi.insert(s, full);
            }
            cur = step.complex;
        }
        Simplified { complex: cur, iota, pi, homotopy }
    }

    /// Lowest-q scalar entry, ties broken by (degree, row, column).
    fn pivot(&self) -> Option<(i64, usize, usize)> {
        let mut best: Option<(i64, i64, usize, usize)> = None;
        for (&t, d) in &self.d {
            for i in 0..d.rows {
                for j in 0..d.cols {
                    let p = d.get(i, j);
                    if let Some(c) = p.as_constant() {
                        if !c.is_zero() {
                            let key = (self.degs[&t][j], t, i, j);
                            if best.map_or(true, |b| key < b) {
                                best = Some(key);
                            }
                        }
                    }
                }
            }
        }
        best.map(|(_, t, i, j)| (t, i, j))
    }

    fn eliminate(&self, t: i64, r: usize, c: usize) -> Step {
        let f = self.field;
        let d = &self.d[&t];
        let phi_inv = d.get(r, c).as_constant().unwrap().inv().unwrap();
        let keep_t: Vec<usize> = (0..self.dim(t)).filter(|&j| j != c).collect();
        let keep_u: Vec<usize> = (0..self.dim(t + 1)).filter(|&i| i != r).collect();
        let delta = d.select(&[r], &keep_t);
        let gamma = d.select(&keep_u, &[c]);
        let eps = d.select(&keep_u, &keep_t);
        let gd = gamma.mul(&delta).scale(&phi_inv);
        let mut out = self.clone();
        out.d.insert(t, eps.sub(&gd));
        if let Some(prev) = self.d.get(&(t - 1)) {
            let all: Vec<usize> = (0..prev.cols).collect();
            out.d.insert(t - 1, prev.select(&keep_t, &all));
        }
        if let Some(next) = self.d.get(&(t + 1)) {
            let all: Vec<usize> = (0..next.rows).collect();
            out.d.insert(t + 1, next.select(&all, &keep_u));
        }
        let sel = |v: &Vec<i64>, keep: &[usize]| keep.iter().map(|&i| v[i]).collect::<Vec<_>>();
        let sel_s = |v: &Vec<String>, keep: &[usize]| keep.iter().map(|&i| v[i].clone()).collect::<Vec<_>>();
        out.degs.insert(t, sel(&self.degs[&t], &keep_t));
        out.degs.insert(t + 1, sel(&self.degs[&(t + 1)], &keep_u));
        out.labels.insert(t, sel_s(&self.labels[&t], &keep_t));
        out.labels.insert(t + 1, sel_s(&self.labels[&(t + 1)], &keep_u));

        // ι_t = (-φ⁻¹δ ; 1), ι_{t+1} = (0 ; 1); π_t = (0 | 1), π_{t+1} = (-γφ⁻¹ | 1)
        let mut iota_t = PMat::zero(self.dim(t), keep_t.len());
        for (a, &j) in keep_t.iter().enumerate() {
            iota_t.set(j, a, Poly::one(&f));
            iota_t.set(c, a, delta.get(0, a).scale(&phi_inv).neg());
        }
        let mut iota_u = PMat::zero(self.dim(t + 1), keep_u.len());
        for (a, &i) in keep_u.iter().enumerate() {
            iota_u.set(i, a, Poly::one(&f));
        }
        let mut pi_t = PMat::zero(keep_t.len(), self.dim(t));
        for (a, &j) in keep_t.iter().enumerate() {
            pi_t.set(a, j, Poly::one(&f));
        }
        let mut pi_u = PMat::zero(keep_u.len(), self.dim(t + 1));
        for (a, &i) in keep_u.iter().enumerate() {
            pi_u.set(a, i, Poly::one(&f));
            pi_u.set(a, r, gamma.get(a, 0).scale(&phi_inv).neg());
        }
        let mut h = PMat::zero(self.dim(t), self.dim(t + 1));
        h.set(c, r, Poly::constant(phi_inv.clone()));

        // transported action M' = π (g(ι) + M ι)
        for (s, io, p) in [(t, &iota_t, &pi_t), (t + 1, &iota_u, &pi_u)] {
            let ms = Sl2::ALL.map(|g| p.mul(&self.g_entries(g, io).add(&self.m_at(s, g).mul(io))));
            out.sl2.insert(s, ms);
        }
        let iota = BTreeMap::from([(t, iota_t), (t + 1, iota_u)]);
        let pi = BTreeMap::from([(t, pi_t), (t + 1, pi_u)]);
        Step { complex: out, iota, pi, h }
    }
}

struct Step {
    complex: ChainComplex,
    iota: BTreeMap<i64, PMat>,
    pi: BTreeMap<i64, PMat>,
    h: PMat,
}

/// A simplified complex with the recorded comparison maps to the original one:
/// `π∘ι = id` and `id - ι∘π = d h + h d`.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub complex: ChainComplex,
    /// `ι[t]: simplified C^t → original C^t`.
    pub iota: BTreeMap<i64, PMat>,
    /// `π[t]: original C^t → simplified C^t`.
    pub pi: BTreeMap<i64, PMat>,
    /// `h[t]: original C^{t+1} → original C^t`.
    pub homotopy: BTreeMap<i64, PMat>,
}
