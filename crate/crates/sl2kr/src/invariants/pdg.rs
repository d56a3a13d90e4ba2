//! p-DG structures: a nilpotent degree-±2 operator on bigraded `𝔽_p`-spaces, its graded
//! Jordan type, the stable (slash) classes, and their image in `ℤ[q]/(1 + q² + … + q^{2p-2})`.

use std::collections::BTreeMap;

use crate::complex::{Cube, CubeOptions, LinkDiagram};
use crate::error::{Error, Result};
use crate::homology::Homology;
use crate::linalg::{apply, rank, SVec};
use crate::ring::{Field, LaurentQ, Sl2};

/// A bigraded space with an operator `∂` of q-degree `delta`.
#[derive(Clone, Debug)]
pub struct PComplex {
    pub field: Field,
    pub delta: i64,
    pub dims: BTreeMap<(i64, i64), usize>,
    /// Columns of `∂: V_{t,q} → V_{t,q+delta}`.
    pub maps: BTreeMap<(i64, i64), Vec<SVec>>,
    /// q-range on which the data is complete; `None` when nothing is truncated.
    pub known: Option<(i64, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Block {
    pub t: i64,
    /// Lowest and highest q-degree of the block.
    pub bottom: i64,
    pub top: i64,
    pub size: usize,
    /// The block cannot be an artifact of truncation.
    pub certified: bool,
}

/// Reduced element of `ℤ[q]/(1 + q² + … + q^{2p-2})`: coefficients of `q^0 … q^{2p-3}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicValue {
    pub p: u32,
    pub coeffs: Vec<i64>,
}

impl CyclotomicValue {
    pub fn reduce(x: &LaurentQ, p: u32) -> CyclotomicValue {
        let period = 2 * p as i64;
        let len = (2 * p - 2) as usize;
        // q^{2p} = 1 in the quotient, since (q² - 1)Φ = q^{2p} - 1
        let mut c = vec![0i64; period as usize];
        for (k, a) in x.terms() {
            c[k.rem_euclid(period) as usize] += a;
        }
        // divide by the monic Φ = Σ_{i<p} q^{2i}
        for top in (len..period as usize).rev() {
            let a = c[top];
            if a != 0 {
                for i in 0..p as usize {
                    c[top - len + 2 * i] -= a;
                }
            }
        }
        c.truncate(len);
        CyclotomicValue { p, coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl PComplex {
    fn p(&self) -> usize {
        self.field.characteristic() as usize
    }

    fn dim(&self, t: i64, q: i64) -> usize {
        self.dims.get(&(t, q)).copied().unwrap_or(0)
    }

    /// Image of `∂^m` applied to the columns, leaving the space once the target is empty.
    fn power(&self, t: i64, q: i64, m: usize) -> Vec<SVec> {
        let f = self.field;
        let mut cols: Vec<SVec> = (0..self.dim(t, q)).map(|k| vec![(k, f.one())]).collect();
        let mut cur = q;
        for _ in 0..m {
            match self.maps.get(&(t, cur)) {
                Some(d) if self.dim(t, cur + self.delta) > 0 => {
                    cols = cols.iter().map(|c| apply(f, d, c)).collect();
                    cur += self.delta;
                }
                _ => return Vec::new(),
            }
        }
        cols
    }

    fn power_rank(&self, t: i64, q: i64, m: usize) -> usize {
        if m == 0 {
            return self.dim(t, q);
        }
        rank(self.field, &self.power(t, q, m))
    }

    fn inside(&self, q: i64) -> bool {
        self.known.map_or(true, |(lo, hi)| lo <= q && q <= hi)
    }

    /// Checks `∂^p = 0` wherever the whole chain is known.
    pub fn check_nilpotent(&self) -> Result<()> {
        let p = self.p();
        for &(t, q) in self.dims.keys() {
            if !self.inside(q + p as i64 * self.delta) {
                continue;
            }
            if self.power(t, q, p).iter().any(|c| !c.is_empty()) {
                return Err(Error::Inconsistent(format!("∂^{p} ≠ 0 on ({t}, {q})")));
            }
        }
        Ok(())
    }
}

/// Graded Jordan type of `∂`: a block with head in `(t, q)` has length at least `m+1` for
/// `rank ∂^m|_{q} - rank ∂^{m+1}|_{q-δ}` heads.
pub fn jordan_blocks(pc: &PComplex) -> Result<Vec<Block>> {
    pc.check_nilpotent()?;
    let p = pc.p();
    let mut out = Vec::new();
    for &(t, q) in pc.dims.keys() {
        let at_least = |k: usize| pc.power_rank(t, q, k - 1) - pc.power_rank(t, q - pc.delta, k);
        for k in 1..=p {
            let exact = at_least(k) - if k < p { at_least(k + 1) } else { 0 };
            if exact == 0 {
                continue;
            }
            let end = q + (k as i64 - 1) * pc.delta;
            let certified = pc.inside(q - pc.delta) && pc.inside(end + pc.delta);
            for _ in 0..exact {
                out.push(Block { t, bottom: q.min(end), top: q.max(end), size: k, certified });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The stable classes: blocks of size `< p` (size-`p` blocks are projective).
pub fn slash_classes(blocks: &[Block], p: u32) -> Vec<Block> {
    blocks.iter().filter(|b| b.size < p as usize).cloned().collect()
}

/// `Σ (-1)^t q^{bottom} (1 + q² + … + q^{2(k-1)})` over the blocks, reduced.
pub fn grothendieck_image(blocks: &[Block], p: u32) -> CyclotomicValue {
    let mut x = LaurentQ::zero();
    for b in blocks {
        let sign = if b.t.rem_euclid(2) == 0 { 1 } else { -1 };
        for i in 0..b.size as i64 {
            x.add_term(b.bottom + 2 * i, sign);
        }
    }
    CyclotomicValue::reduce(&x, p)
}

#[derive(Clone, Debug)]
pub struct PdgReport {
    pub p: u32,
    pub blocks: Vec<Block>,
    pub slash: Vec<Block>,
    /// Only for the `e`-theory, where the homology is finite.
    pub image: Option<CyclotomicValue>,
}

fn pcomplex(h: &Homology, g: Sl2, known: Option<(i64, i64)>) -> PComplex {
    let mut dims = BTreeMap::new();
    let mut maps = BTreeMap::new();
    let range = known.unwrap_or((h.window.qmin, h.window.qmax));
    for ((t, q), d) in h.dims() {
        if q < range.0 || q > range.1 {
            continue;
        }
        dims.insert((t, q), d);
        let q2 = q + g.q_shift();
        if range.0 <= q2 && q2 <= range.1 && h.dim(t, q2) > 0 {
            if let Some(m) = h.sl2_matrix(g, t, q) {
                maps.insert((t, q), m);
            }
        }
    }
    PComplex { field: h.field(), delta: g.q_shift(), dims, maps, known }
}

/// `N = p` over `𝔽_p` with every `E_i ↦ 0` and `∂ = e`.
pub fn pdg_e_homology(d: &LinkDiagram, p: u32) -> Result<PdgReport> {
    let field = Field::prime(p)?;
    let n = p as usize;
    let cube = Cube::new(d, &CubeOptions::new(n, field))?;
    let c = cube.chain().simplify().complex.specialize(&(0..n).collect::<Vec<_>>());
    let h = Homology::with_default_window(&c);
    let pc = pcomplex(&h, Sl2::E, None);
    let blocks = jordan_blocks(&pc)?;
    let image = Some(grothendieck_image(&blocks, p));
    Ok(PdgReport { p, slash: slash_classes(&blocks, p), blocks, image })
}

/// `∂ = f` on the homology over `𝔽_p[E_1..E_N]`, on the certified window.
pub fn pdg_f_homology(d: &LinkDiagram, n: usize, p: u32) -> Result<PdgReport> {
    let field = Field::prime(p)?;
    let cube = Cube::new(d, &CubeOptions::new(n, field))?;
    let c = cube.chain().simplify().complex;
    let h = Homology::with_default_window(&c);
    let pc = pcomplex(&h, Sl2::F, Some(h.window.certified()));
    let blocks = jordan_blocks(&pc)?;
    Ok(PdgReport { p, slash: slash_classes(&blocks, p), blocks, image: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(p: u32, dims: &[(i64, usize)], maps: Vec<((i64, i64), Vec<SVec>)>, delta: i64) -> PComplex {
        PComplex {
            field: Field::Prime(p),
            delta,
            dims: dims.iter().map(|&(q, d)| ((0, q), d)).collect(),
            maps: maps.into_iter().collect(),
            known: None,
        }
    }

    #[test]
    fn derivative_on_truncated_polynomials() {
        // -d/dx on 𝔽_3[x]/(x³), basis 1, x, x² in degrees 0, 2, 4
        let f = Field::Prime(3);
        let pc = single(
            3,
            &[(0, 1), (2, 1), (4, 1)],
            vec![((0, 2), vec![vec![(0, f.int(-1))]]), ((0, 4), vec![vec![(0, f.int(-2))]])],
            -2,
        );
        let b = jordan_blocks(&pc).unwrap();
        assert_eq!(b, vec![Block { t: 0, bottom: 0, top: 4, size: 3, certified: true }]);
        assert!(slash_classes(&b, 3).is_empty());
        assert!(grothendieck_image(&b, 3).is_zero());
    }

    #[test]
    fn zero_operator_and_sums() {
        let pc = single(3, &[(0, 1)], vec![], 2);
        let b = jordan_blocks(&pc).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].size, 1);
        assert_eq!(grothendieck_image(&b, 3).coeffs, vec![1, 0, 0, 0]);
        let mut two = b.clone();
        two.extend(b.clone());
        assert_eq!(grothendieck_image(&two, 3).coeffs, vec![2, 0, 0, 0]);
    }

    #[test]
    fn non_nilpotent_is_rejected() {
        let f = Field::Prime(3);
        let pc = single(3, &[(0, 1)], vec![((0, 0), vec![vec![(0, f.one())]])], 0);
        assert!(jordan_blocks(&pc).is_err());
    }

    #[test]
    fn cyclotomic_reduction() {
        // [3] = q^{-2} + 1 + q^2 vanishes, q^6 = 1
        assert!(CyclotomicValue::reduce(&crate::ring::quantum_int(3), 3).is_zero());
        assert_eq!(CyclotomicValue::reduce(&LaurentQ::mono(1, 6), 3).coeffs, vec![1, 0, 0, 0]);
        assert_eq!(CyclotomicValue::reduce(&LaurentQ::mono(1, 4), 3).coeffs, vec![-1, 0, -1, 0]);
    }
}
