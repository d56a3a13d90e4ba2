use std::collections::{BTreeMap, HashMap};

use super::chain::ChainComplex;
use super::diagram::LinkDiagram;
use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{solve, PMat, SVec};
use crate::ring::{Exps, Field, Poly, Scalar, Sl2};
use crate::tqft::{cup_twist, Model, Res, StateSpace, TurnbackModel, Twist, TwoStrandModel};

/// Green dot on a thin diagram edge. A hollow dot of multiplicity `α` twists by
/// `τ(f) = α x_e`, `τ(h) = -α`; a solid one by `τ(f) = α (E_1 - x_e)`, `τ(h) = -(N-1)α`.
#[derive(Clone, Debug, PartialEq)]
pub struct GreenDot {
    pub edge: usize,
    pub solid: bool,
    pub mult: Scalar,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Framing {
    Framed,
    /// Correct by the given framing numbers (`None`: the blackboard framing of the diagram).
    Unframed(Option<Vec<i64>>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct CubeOptions {
    pub n: usize,
    pub field: Field,
    pub t1: Scalar,
    pub t2: Scalar,
    pub dots: Vec<GreenDot>,
    pub framing: Framing,
}

impl CubeOptions {
    pub fn new(n: usize, field: Field) -> CubeOptions {
        let half = field.frac(1, 2).expect("odd characteristic");
        CubeOptions { n, field, t1: half.clone(), t2: half, dots: vec![], framing: Framing::Unframed(None) }
    }
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub bits: u64,
    pub res: Vec<Res>,
    pub t: i64,
    pub space: StateSpace,
}

/// The cube of resolutions with its per-vertex flat twists.
pub struct Cube {
    pub diagram: LinkDiagram,
    pub opts: CubeOptions,
    pub model: Box<dyn Model>,
    /// Model edge carrying each diagram edge.
    pub translate: Vec<usize>,
    pub vertices: Vec<Vertex>,
    pub twists: Vec<Twist>,
    /// Global shift `t^a q^b` applied by the framing correction.
    pub shift: (i64, i64),
    /// Constant added to `h` by the framing correction: `-(N-1) 𝚏(L)`.
    pub framing_h: Scalar,
    /// Dimension of the space of equivariant twist choices (green-dot slides).
    pub twist_freedom: usize,
}

impl std::fmt::Debug for Cube {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Cube").field("model", &self.model.name()).field("vertices", &self.vertices.len()).finish()
    }
}

pub fn choose_model(d: &LinkDiagram, n: usize, field: Field) -> Result<(Box<dyn Model>, Vec<usize>)> {
    if n < 2 {
        return Err(Error::Invalid("N must be at least 2".into()));
    }
    let ident: Vec<usize> = (0..d.n_edges).collect();
    if d.crossings.is_empty() || n == 2 {
        let m = TurnbackModel { field, n, crossings: d.crossings.clone(), n_edges: d.n_edges, free_loops: 0 };
        return Ok((Box::new(m), ident));
    }
    if let Some(signs) = &d.two_strand {
        let mut tr = vec![0; d.n_edges];
        let k = signs.len();
        for (j, c) in d.crossings.iter().enumerate() {
            tr[c.bl] = TwoStrandModel::edge_id(0, j);
            tr[c.br] = TwoStrandModel::edge_id(1, j);
            tr[c.tl] = TwoStrandModel::edge_id(0, (j + 1) % k);
            tr[c.tr] = TwoStrandModel::edge_id(1, (j + 1) % k);
        }
        return Ok((Box::new(TwoStrandModel { field, n, signs: signs.clone() }), tr));
    }
    Err(Error::WebNotReducible(format!(
        "resolutions for N = {n} are supported for N = 2, crossingless diagrams and 2-strand braid closures"
    )))
}

fn resolution(d: &LinkDiagram, bits: u64) -> Vec<Res> {
    d.crossings
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let b = bits >> i & 1 == 1;
            match (c.sign > 0, b) {
                (true, false) | (false, true) => Res::D,
                _ => Res::P,
            }
        })
        .collect()
}

/// Sign of the cube edge flipping bit `i` at `bits`.
pub fn edge_sign(bits: u64, i: usize) -> i64 {
    if (bits & ((1u64 << i) - 1)).count_ones() % 2 == 0 {
        1
    } else {
        -1
    }
}

impl Cube {
    pub fn new(d: &LinkDiagram, opts: &CubeOptions) -> Result<Cube> {
        if opts.field.characteristic() == 2 {
            return Err(Error::Characteristic(2));
        }
        let (model, translate) = choose_model(d, opts.n, opts.field)?;
        let nc = d.crossings.len();
        if nc > 20 {
            return Err(Error::Unsupported(format!("{nc} crossings")));
        }
        let n_minus = d.n_minus() as i64;
        let vertices: Vec<Vertex> = exec::map_range(1usize << nc, |b| {
            let bits = b as u64;
            let res = resolution(d, bits);
            let mut space = model.space(&res);
            let qshift: i64 = d
                .crossings
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let bit = (bits >> i & 1) as i64;
                    if c.sign > 0 {
                        -bit
                    } else {
                        1 - bit
                    }
                })
                .sum();
            space.shift += qshift;
            Vertex { bits, res, t: bits.count_ones() as i64 - n_minus, space }
        });
        let mut cube = Cube {
            diagram: d.clone(),
            opts: opts.clone(),
            model,
            translate,
            vertices,
            twists: vec![],
            shift: (0, 0),
            framing_h: opts.field.zero(),
            twist_freedom: 0,
        };
        cube.solve_twists()?;
        cube.apply_decorations()?;
        Ok(cube)
    }

    pub fn n(&self) -> usize {
        self.opts.n
    }

    pub fn field(&self) -> Field {
        self.opts.field
    }

    /// Diagram edge variable at a vertex.
    pub fn edge_var(&self, v: usize, diagram_edge: usize) -> &Poly {
        self.vertices[v].space.edge_var(self.translate[diagram_edge])
    }

    fn anchor(&self) -> usize {
        let bits: u64 = self.diagram.crossings.iter().enumerate().map(|(i, c)| if c.sign > 0 { 1u64 << i } else { 0 }).sum();
        bits as usize
    }

    /// Flat twists making every cube edge equivariant, anchored by the cup twists of the
    /// all-parallel resolution. Twists are `τ(f) = c_0 E_1 + Σ c_k v_k`, one unknown per
    /// degree-2 generator; `τ(h) = e(τ(f))`.
    fn solve_twists(&mut self) -> Result<()> {
        let f = self.field();
        let n = self.n();
        let nv = self.vertices.len();
        let mut offset = Vec::with_capacity(nv + 1);
        offset.push(0);
        for v in &self.vertices {
            offset.push(offset.last().unwrap() + 1 + v.space.tower.vars.len());
        }
        let gens = |v: &Vertex| -> Vec<Poly> {
            let mut g = vec![v.space.tower.e(1)];
            g.extend((0..v.space.tower.vars.len()).map(|k| v.space.tower.var(k)));
            g
        };
        let mut rows: Vec<BTreeMap<usize, Scalar>> = Vec::new();
        let mut rhs: Vec<Scalar> = Vec::new();
        let nc = self.diagram.crossings.len();
        for vi in 0..nv {
            for i in 0..nc {
                let src = &self.vertices[vi];
                if src.bits >> i & 1 == 1 {
                    continue;
                }
                let wi = (src.bits | 1 << i) as usize;
                let tgt = &self.vertices[wi];
                let em = self.model.edge(&src.res, i, &src.space, &tgt.space);
                let t = &tgt.space.tower;
                let omega = t.reduce(&em.weight);
                let mut eq: HashMap<(usize, Exps), BTreeMap<usize, Scalar>> = HashMap::new();
                let mut eq_rhs: HashMap<(usize, Exps), Scalar> = HashMap::new();
                let put = |eq: &mut HashMap<(usize, Exps), BTreeMap<usize, Scalar>>, col: usize, p: &Poly, sgn: i64| {
                    for (j, r) in t.coords(&t.mul(p, &omega)).into_iter().enumerate() {
                        for (e, c) in r.terms() {
                            let row = eq.entry((j, e.clone())).or_default();
                            let cur = row.entry(col).or_insert_with(|| f.zero());
                            *cur = cur.add(&c.mul_int(sgn));
                        }
                    }
                };
                for (k, y) in gens(tgt).iter().enumerate() {
                    put(&mut eq, offset[wi] + k, y, 1);
                }
                let imgs = {
                    let mut im: Vec<Poly> = (0..n).map(|i| Poly::var(i, &f)).collect();
                    im.extend(em.sigma.iter().cloned());
                    im
                };
                for (k, y) in gens(src).iter().enumerate() {
                    put(&mut eq, offset[vi] + k, &y.subst(&imgs, &f), -1);
                }
                for (j, r) in t.coords(&t.mul(&em.log_f, &omega)).into_iter().enumerate() {
                    for (e, c) in r.terms() {
                        eq.entry((j, e.clone())).or_default();
                        let cur = eq_rhs.entry((j, e.clone())).or_insert_with(|| f.zero());
                        *cur = cur.sub(c);
                    }
                }
                let mut keys: Vec<_> = eq.keys().cloned().collect();
                keys.sort();
                for key in keys {
                    rows.push(eq.remove(&key).unwrap());
                    rhs.push(eq_rhs.remove(&key).unwrap_or_else(|| f.zero()));
                }
                if !omega.is_zero() {
                    let mut row = BTreeMap::new();
                    for (v, s) in [(wi, 1i64), (vi, -1)] {
                        let nvars = self.vertices[v].space.tower.vars.len();
                        row.insert(offset[v], f.int(-(n as i64) * s));
                        for k in 0..nvars {
                            row.insert(offset[v] + 1 + k, f.int(-s));
                        }
                    }
                    rows.push(row);
                    rhs.push(f.int(-em.log_h));
                }
            }
        }
        // anchor
        let a = self.anchor();
        let cup = cup_twist(&self.vertices[a].space);
        for (k, y) in gens(&self.vertices[a]).iter().enumerate() {
            let (e, _) = y.terms().next().unwrap();
            let c = cup.coeff(e).cloned().unwrap_or_else(|| f.zero());
            rows.push(BTreeMap::from([(offset[a] + k, f.one())]));
            rhs.push(c);
        }
        let ncols = offset[nv];
        let mut cols: Vec<SVec> = vec![Vec::new(); ncols];
        let b: SVec = rhs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect();
        for (i, row) in rows.iter().enumerate() {
            for (&j, c) in row {
                if !c.is_zero() {
                    cols[j].push((i, c.clone()));
                }
            }
        }
        let (part, ker) = solve(f, &cols, &b)
            .ok_or_else(|| Error::NoEquivariantTwist(format!("{} cube", self.model.name())))?;
        self.twist_freedom = ker.len();
        let mut x = vec![f.zero(); ncols];
        for (j, c) in part {
            x[j] = c;
        }
        // the parameters move the solution along the first two slide directions
        let half = f.frac(1, 2)?;
        for (kv, t) in ker.iter().zip([&self.opts.t1, &self.opts.t2]) {
            let s = t.sub(&half);
            for (j, c) in kv {
                x[*j] = x[*j].add(&c.mul(&s));
            }
        }
        self.twists = self
            .vertices
            .iter()
            .enumerate()
            .map(|(vi, v)| {
                let mut tf = Poly::zero();
                for (k, y) in gens(v).iter().enumerate() {
                    tf.add_assign(&y.scale(&x[offset[vi] + k]));
                }
                Twist::from_f(&v.space.tower, tf)
            })
            .collect();
        Ok(())
    }

    /// Dot twist at every vertex for a decoration on a diagram edge.
    fn dot_twist(&self, v: usize, edge: usize, solid: bool, mult: &Scalar) -> Twist {
        let sp = &self.vertices[v].space;
        let x = self.edge_var(v, edge).clone();
        let p = if solid { sp.tower.e(1).sub(&x) } else { x };
        Twist::from_f(&sp.tower, p.scale(mult))
    }

    fn apply_decorations(&mut self) -> Result<()> {
        let f = self.field();
        for dot in &self.opts.dots {
            if dot.edge >= self.diagram.n_edges {
                return Err(Error::Location(format!("edge {} not in diagram", dot.edge + 1)));
            }
        }
        let framing = match &self.opts.framing {
            Framing::Framed => vec![0; self.diagram.components.len()],
            Framing::Unframed(None) => self.diagram.framing.clone(),
            Framing::Unframed(Some(v)) => {
                if v.len() != self.diagram.components.len() {
                    return Err(Error::Invalid("one framing number per component expected".into()));
                }
                v.clone()
            }
        };
        let total: i64 = framing.iter().sum();
        self.shift = (-total, self.n() as i64 * total);
        self.framing_h = f.int(-(self.n() as i64 - 1) * total);
        let half = f.frac(1, 2)?;
        for v in 0..self.vertices.len() {
            let mut tw = self.twists[v].clone();
            for dot in &self.opts.dots {
                tw = tw.add(&self.dot_twist(v, dot.edge, dot.solid, &dot.mult));
            }
            // framing twist 𝚏 ((N-1)/2 · p_1 + ½ p̄_1) at each base point; this is the twist
            // a curl leaves behind, so it is fixed by matching the crossingless unknot
            for (c, &fr) in framing.iter().enumerate() {
                if fr == 0 {
                    continue;
                }
                let bp = self.diagram.base_point(c);
                let m = half.mul_int(fr);
                tw = tw.add(&self.dot_twist(v, bp, false, &m.mul_int(self.n() as i64 - 1)));
                tw = tw.add(&self.dot_twist(v, bp, true, &m));
            }
            self.twists[v] = tw;
        }
        Ok(())
    }

    /// The same cube with the twist at one vertex removed (a negative control for the checker).
    pub fn without_twist(&self, v: usize) -> Cube {
        let mut twists = self.twists.clone();
        twists[v] = Twist::zero(&self.field());
        Cube {
            diagram: self.diagram.clone(),
            opts: self.opts.clone(),
            model: choose_model(&self.diagram, self.n(), self.field()).expect("model exists").0,
            translate: self.translate.clone(),
            vertices: self.vertices.clone(),
            twists,
            shift: self.shift,
            framing_h: self.framing_h.clone(),
            twist_freedom: self.twist_freedom,
        }
    }

    /// Vertex indices in each homological degree.
    pub(crate) fn by_degree(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut m: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            m.entry(v.t).or_default().push(i);
        }
        m
    }

    pub fn edge_matrix(&self, v: usize, i: usize) -> PMat {
        let src = &self.vertices[v];
        let w = (src.bits | 1 << i) as usize;
        let tgt = &self.vertices[w];
        self.model.edge(&src.res, i, &src.space, &tgt.space).matrix(&src.space, &tgt.space)
    }

    /// Multiplication by the variable of a diagram edge, as an `R`-linear chain endomorphism
    /// of degree 2 keyed by homological degree.
    pub fn edge_action(&self, diagram_edge: usize) -> BTreeMap<i64, PMat> {
        let mut out = BTreeMap::new();
        for (&t, vs) in &self.by_degree() {
            let dim: usize = vs.iter().map(|&v| self.vertices[v].space.rank()).sum();
            let mut m = PMat::zero(dim, dim);
            let mut off = 0;
            for &v in vs {
                let sp = &self.vertices[v].space;
                m.put_block(off, off, &sp.mult_matrix(self.edge_var(v, diagram_edge)));
                off += sp.rank();
            }
            out.insert(t + self.shift.0, m);
        }
        out
    }

    /// Assembles the total complex.
    pub fn chain(&self) -> ChainComplex {
        let f = self.field();
        let groups = self.by_degree();
        let mut pos = vec![(0i64, 0usize); self.vertices.len()];
        let mut degs = BTreeMap::new();
        let mut labels = BTreeMap::new();
        for (&t, vs) in &groups {
            let mut off = 0;
            let mut q = Vec::new();
            let mut l = Vec::new();
            for &v in vs {
                pos[v] = (t, off);
                let sp = &self.vertices[v].space;
                for j in 0..sp.rank() {
                    q.push(sp.q_degree(j) + self.shift.1);
                    l.push(format!("{}:{}", sp.label, j));
                }
                off += sp.rank();
            }
            degs.insert(t + self.shift.0, q);
            labels.insert(t + self.shift.0, l);
        }
        let nc = self.diagram.crossings.len();
        let edges: Vec<(usize, usize)> = (0..self.vertices.len())
            .flat_map(|v| (0..nc).map(move |i| (v, i)))
            .filter(|&(v, i)| self.vertices[v].bits >> i & 1 == 0)
            .collect();
        let mats = exec::map(&edges, |&(v, i)| self.edge_matrix(v, i));
        let mut d: BTreeMap<i64, PMat> = BTreeMap::new();
        for (&t, vs) in &groups {
            if let Some(next) = groups.get(&(t + 1)) {
                let rows: usize = next.iter().map(|&v| self.vertices[v].space.rank()).sum();
                let cols: usize = vs.iter().map(|&v| self.vertices[v].space.rank()).sum();
                d.insert(t + self.shift.0, PMat::zero(rows, cols));
            }
        }
        for ((v, i), m) in edges.iter().zip(mats) {
            let w = (self.vertices[*v].bits | 1 << i) as usize;
            let (t, c0) = pos[*v];
            let (_, r0) = pos[w];
            let m = if edge_sign(self.vertices[*v].bits, *i) < 0 { m.scale(&f.int(-1)) } else { m };
            d.get_mut(&(t + self.shift.0)).unwrap().put_block(r0, c0, &m);
        }
        let blocks = exec::map_range(self.vertices.len(), |v| {
            Sl2::ALL.map(|g| self.vertices[v].space.sl2_matrix(g, &self.twists[v]))
        });
        let mut sl2 = BTreeMap::new();
        for (&t, vs) in &groups {
            let dim: usize = vs.iter().map(|&v| self.vertices[v].space.rank()).sum();
            let mut ms = [PMat::zero(dim, dim), PMat::zero(dim, dim), PMat::zero(dim, dim)];
            for &v in vs {
                let off = pos[v].1;
                for k in 0..3 {
                    ms[k].put_block(off, off, &blocks[v][k]);
                }
            }
            sl2.insert(t + self.shift.0, ms);
        }
        ChainComplex { field: f, n: self.n(), degs, labels, d, sl2, killed: vec![] }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn checks(d: &LinkDiagram, n: usize) -> ChainComplex {
        let c = Cube::new(d, &CubeOptions::new(n, Field::Rationals)).unwrap().chain();
        assert_eq!(c.check_d_squared(), None);
        assert_eq!(c.check_degrees(), None);
        assert_eq!(c.check_equivariance(), None);
        assert_eq!(c.check_sl2_relations(), None);
        c
    }

    #[test]
    fn hopf_and_trefoil_cubes_are_equivariant() {
        for n in [2, 3] {
            checks(&LinkDiagram::from_braid(2, &[1, 1]).unwrap(), n);
            checks(&LinkDiagram::from_braid(2, &[1, 1, 1]).unwrap(), n);
            checks(&LinkDiagram::from_braid(2, &[-1, -1, -1]).unwrap(), n);
        }
        checks(&LinkDiagram::from_braid(3, &[1, -2, 1, -2]).unwrap(), 2);
    }

    #[test]
    fn omitted_twist_is_detected() {
        let d = LinkDiagram::from_braid(2, &[1, 1]).unwrap();
        let cube = Cube::new(&d, &CubeOptions::new(2, Field::Rationals)).unwrap();
        let v = cube.twists.iter().position(|t| !t.f.is_zero()).unwrap();
        let fail = cube.without_twist(v).chain().check_equivariance().unwrap();
        assert_eq!(fail.check, "F∘d = d∘F");
    }
}
