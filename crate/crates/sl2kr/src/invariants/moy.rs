//! The decategorified invariant, computed without the homology pipeline: a Hecke-algebra
//! state sum for braid closures (any `N`) and a circle-counting state sum for `N = 2`.

use std::collections::HashMap;

use crate::complex::{Framing, LinkDiagram};
use crate::error::{Error, Result};
use crate::ring::{quantum_int, LaurentQ};

type State = Vec<u8>;

/// `D(v_a ⊗ v_b)` for the dumbbell on two adjacent tensor factors: `0` on `v_a ⊗ v_a`, and
/// `[[q, -1], [-1, q⁻¹]]` on the span of `v_a ⊗ v_b, v_b ⊗ v_a` (`a < b`).
fn dumbbell(a: u8, b: u8) -> Vec<((u8, u8), LaurentQ)> {
    use std::cmp::Ordering::*;
    match a.cmp(&b) {
        Equal => vec![],
        Less => vec![((a, b), LaurentQ::mono(1, 1)), ((b, a), LaurentQ::mono(-1, 0))],
        Greater => vec![((a, b), LaurentQ::mono(1, -1)), ((b, a), LaurentQ::mono(-1, 0))],
    }
}

/// One crossing on factors `p, p+1`: `D - q⁻¹` for a positive crossing, `D - q` otherwise.
fn crossing(v: &HashMap<State, LaurentQ>, p: usize, positive: bool) -> HashMap<State, LaurentQ> {
    let mut out: HashMap<State, LaurentQ> = HashMap::new();
    let diag = LaurentQ::mono(-1, if positive { -1 } else { 1 });
    let mut put = |s: State, c: LaurentQ| {
        let slot = out.entry(s).or_insert_with(LaurentQ::zero);
        *slot = slot.add(&c);
    };
    for (s, c) in v {
        put(s.clone(), c.mul(&diag));
        for ((a, b), k) in dumbbell(s[p], s[p + 1]) {
            let mut t = s.clone();
            t[p] = a;
            t[p + 1] = b;
            put(t, c.mul(&k));
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Quantum trace of the braid word's Hecke representation on `V^{⊗k}`, `dim V = N`,
/// with `K = diag(q^{N+1-2i})`.
pub fn braid_state_sum(n: usize, strands: usize, word: &[i32]) -> LaurentQ {
    let mut total = LaurentQ::zero();
    let mut state = vec![0u8; strands];
    loop {
        let mut v: HashMap<State, LaurentQ> = HashMap::from([(state.clone(), LaurentQ::one())]);
        for &g in word {
            v = crossing(&v, g.unsigned_abs() as usize - 1, g > 0);
        }
        if let Some(c) = v.get(&state) {
            let k: i64 = state.iter().map(|&i| n as i64 - 1 - 2 * i as i64).sum();
            total = total.add(&c.shift(k));
        }
        // next basis state
        let mut i = 0;
        while i < strands {
            state[i] += 1;
            if (state[i] as usize) < n {
                break;
            }
            state[i] = 0;
            i += 1;
        }
        if i == strands {
            return total;
        }
    }
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
        self.0[a] = b;
    }
}

/// `N = 2` state sum over all resolutions: parallel resolutions and dumbbells (whose thick
/// edge is invisible at `N = 2`, leaving a turnback) are evaluated by counting circles.
pub fn circle_state_sum(d: &LinkDiagram) -> LaurentQ {
    let nc = d.crossings.len();
    let two = quantum_int(2);
    let mut total = LaurentQ::zero();
    for bits in 0u64..1 << nc {
        let mut dsu = Dsu((0..d.n_edges).collect());
        let mut t = 0i64;
        let mut q = 0i64;
        for (i, c) in d.crossings.iter().enumerate() {
            let b = bits >> i & 1 == 1;
            let dumbbell = (c.sign > 0) != b;
            if dumbbell {
                dsu.union(c.bl, c.br);
                dsu.union(c.tl, c.tr);
            } else {
                dsu.union(c.bl, c.tl);
                dsu.union(c.br, c.tr);
            }
            match (c.sign > 0, b) {
                (true, true) => {
                    t += 1;
                    q -= 1;
                }
                (false, false) => {
                    t -= 1;
                    q += 1;
                }
                _ => {}
            }
        }
        let circles = (0..d.n_edges).filter(|&e| dsu.find(e) == e).count() as u32;
        let term = two.pow(circles).shift(q);
        total = if t.rem_euclid(2) == 0 { total.add(&term) } else { total.sub(&term) };
    }
    total
}

/// Total framing number used by the correction `(-1)^𝚏 q^{N𝚏}`.
pub fn framing_total(d: &LinkDiagram, framing: &Framing) -> Result<i64> {
    Ok(match framing {
        Framing::Framed => 0,
        Framing::Unframed(None) => d.framing.iter().sum(),
        Framing::Unframed(Some(v)) => {
            if v.len() != d.components.len() {
                return Err(Error::Invalid("one framing number per component expected".into()));
            }
            v.iter().sum()
        }
    })
}

/// The MOY evaluation of `L` at `gl_N`, normalized so the unknot gives `[N]`, with the
/// same shifts as the cube and the framing correction.
pub fn moy_polynomial(d: &LinkDiagram, n: usize, framing: &Framing) -> Result<LaurentQ> {
    if n < 1 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    let raw = if let Some((k, w)) = &d.braid {
        braid_state_sum(n, *k, w)
    } else if d.crossings.is_empty() {
        quantum_int(n as i64).pow(d.n_edges as u32)
    } else if n == 2 {
        circle_state_sum(d)
    } else {
        return Err(Error::Unsupported(format!("MOY evaluation of PD input at N = {n} (give a braid word)")));
    };
    let f = framing_total(d, framing)?;
    let corr = raw.shift(n as i64 * f);
    Ok(if f.rem_euclid(2) == 0 { corr } else { corr.neg() })
}
