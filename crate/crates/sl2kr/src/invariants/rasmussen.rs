//! The Rasmussen invariant from the free part of `N = 2` homology over `ℚ[x]`, with a
//! Lee-type filtered oracle and the top weight of the free quotient.

use std::collections::BTreeMap;

use crate::complex::{ChainComplex, Cube, CubeOptions, LinkDiagram};
use crate::error::{Error, Result};
use crate::homology::{Homology, Window};
use crate::linalg::{apply, kernel, rank, Echelon, PMat, SVec};
use crate::ring::{Field, Poly, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Rasmussen {
    /// `s = q_gen + 1`.
    pub s: i64,
    /// q-degree of the generator of the free `ℚ[x]`-summand (`E_1 = 0`).
    pub q_gen: i64,
    /// Filtration levels of the two Lee classes (`E_1 = 0, E_2 = -1`).
    pub lee_levels: Vec<i64>,
    pub lee_s: i64,
    /// Weight of the free generator: the top weight of the free quotient.
    pub mu: Scalar,
    /// Whether `s = μ - 1`.
    pub mu_check: bool,
}

/// `rank x^m : H^{t,q} → H^{t,q+2m}` as columns.
fn power_rank(h: &Homology, x: &BTreeMap<i64, PMat>, t: i64, q: i64, top: i64) -> Option<usize> {
    let f = h.field();
    let n = h.dim(t, q);
    if n == 0 {
        return Some(0);
    }
    let mut cols: Vec<SVec> = (0..n).map(|k| vec![(k, f.one())]).collect();
    let mut cur = q;
    while cur < top {
        if h.dim(t, cur + 2) == 0 {
            return Some(0);
        }
        let m = h.rlinear_matrix(x, 2, t, cur)?;
        cols = cols.iter().map(|c| apply(f, &m, c)).collect();
        cur += 2;
    }
    Some(rank(f, &cols))
}

/// Free `ℚ[x]`-generators per `(t, q)`, seen from the top degree `top` of matching parity.
fn free_generators(h: &Homology, x: &BTreeMap<i64, PMat>, top: i64) -> Result<BTreeMap<(i64, i64), usize>> {
    let (lo, _) = h.window.certified();
    let mut out = BTreeMap::new();
    for t in h.degrees() {
        for parity in 0..2 {
            let t_top = if (top - parity).rem_euclid(2) == 0 { top } else { top - 1 };
            let mut prev = 0;
            let mut q = lo + (lo - parity).rem_euclid(2);
            while q <= t_top {
                let r = power_rank(h, x, t, q, t_top).ok_or_else(|| Error::Window("x-power leaves the window".into()))?;
                if r > prev {
                    out.insert((t, q), r - prev);
                }
                prev = prev.max(r);
                q += 2;
            }
        }
    }
    Ok(out)
}

/// Lee-type oracle: the filtration levels of homology after `E_1 = 0, E_2 = -1`.
pub fn lee_levels(c: &ChainComplex) -> Vec<i64> {
    let f = c.field;
    let point = [Poly::zero(), Poly::int(&f, -1)];
    let eval = |m: &PMat| -> Vec<SVec> {
        (0..m.cols)
            .map(|j| {
                (0..m.rows)
                    .filter_map(|i| {
                        let v = m.get(i, j).subst(&point, &f).as_constant()?;
                        (!v.is_zero()).then_some((i, v))
                    })
                    .collect()
            })
            .collect()
    };
    let mut levels = Vec::new();
    for (&t, qs) in &c.degs {
        let d = c.d.get(&t).map(eval).unwrap_or_else(|| vec![Vec::new(); qs.len()]);
        let prev = c.d.get(&(t - 1)).map(eval).unwrap_or_default();
        let mut boundaries = Echelon::new(f);
        for b in &prev {
            boundaries.insert(b, Vec::new());
        }
        let base = boundaries.rank();
        let mut order: Vec<i64> = qs.clone();
        order.sort_unstable();
        order.dedup();
        let mut got = 0;
        for q in order {
            // cycles supported in degrees ≤ q
            let idx: Vec<usize> = (0..qs.len()).filter(|&j| qs[j] <= q).collect();
            let sub: Vec<SVec> = idx.iter().map(|&j| d[j].clone()).collect();
            let mut span = boundaries.clone();
            for z in kernel(f, &sub) {
                let z: SVec = z.into_iter().map(|(k, a)| (idx[k], a)).collect();
                span.insert(&z, Vec::new());
            }
            let dim = span.rank() - base;
            for _ in got..dim {
                levels.push(q);
            }
            got = dim;
        }
    }
    levels.sort_unstable();
    levels
}

/// `s(K)` for a knot at `N = 2` over ℚ with `t_1 + t_2 = 1`.
pub fn rasmussen_s(d: &LinkDiagram, opts: &CubeOptions) -> Result<Rasmussen> {
    if opts.n != 2 || opts.field != Field::Rationals {
        return Err(Error::Invalid("the Rasmussen invariant needs N = 2 over ℚ".into()));
    }
    if d.components.len() != 1 {
        return Err(Error::Invalid("the Rasmussen invariant needs a knot".into()));
    }
    if opts.t1.add(&opts.t2) != opts.field.one() {
        return Err(Error::Invalid("the Rasmussen invariant needs t1 + t2 = 1".into()));
    }
    let cube = Cube::new(d, opts)?;
    let full = cube.chain();
    let x_full = cube.edge_action(d.base_point(0));
    let simp = full.simplify();
    let x: BTreeMap<i64, PMat> = x_full
        .iter()
        .filter_map(|(t, m)| Some((*t, simp.pi.get(t)?.mul(m).mul(simp.iota.get(t)?))))
        .collect();
    let c = simp.complex.specialize(&[0]);
    let qs: Vec<i64> = c.degs.values().flatten().copied().collect();
    let (lo, hi) = (qs.iter().min().copied().unwrap_or(0), qs.iter().max().copied().unwrap_or(0));
    let h = Homology::new(&c, Window::around(lo, hi, 2));
    let (_, top) = h.window.certified();
    // the answer must not move when the reference degree drops by 4
    let gens = free_generators(&h, &x, top)?;
    let check = free_generators(&h, &x, top - 4)?;
    let stable: BTreeMap<_, _> = gens.iter().filter(|((_, q), _)| *q <= top - 8).map(|(k, v)| (*k, *v)).collect();
    let stable_check: BTreeMap<_, _> = check.iter().filter(|((_, q), _)| *q <= top - 8).map(|(k, v)| (*k, *v)).collect();
    if stable != stable_check || stable.values().sum::<usize>() != 1 {
        return Err(Error::Window(format!("free part did not stabilize: {gens:?}")));
    }
    let (&(_, q_gen), _) = stable.iter().next().expect("one generator");
    let lee = lee_levels(&full);
    if lee.len() != 2 {
        return Err(Error::Inconsistent(format!("Lee homology has dimension {}", lee.len())));
    }
    let lee_sum = lee[0] + lee[1];
    let offset = full.h_offset().ok_or_else(|| Error::Inconsistent("h is not -q + const".into()))?;
    let mu = offset.add(&opts.field.int(-q_gen));
    let s = q_gen + 1;
    let mu_check = opts.field.int(s) == mu.sub(&opts.field.one());
    Ok(Rasmussen { s, q_gen, lee_levels: lee, lee_s: lee_sum / 2, mu, mu_check })
}
