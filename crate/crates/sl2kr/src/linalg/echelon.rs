use std::collections::{BTreeMap, HashMap};

use crate::ring::{Field, Scalar};

/// Sparse vector: strictly increasing indices, nonzero values.
pub type SVec = Vec<(usize, Scalar)>;

pub fn svec_is_zero(v: &SVec) -> bool {
    v.is_empty()
}

pub fn svec_from_map(m: BTreeMap<usize, Scalar>) -> SVec {
    m.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// `a + c·b`.
pub fn axpy(a: &SVec, c: &Scalar, b: &SVec) -> SVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ka = a.get(i).map(|x| x.0).unwrap_or(usize::MAX);
        let kb = b.get(j).map(|x| x.0).unwrap_or(usize::MAX);
        if ka < kb {
            out.push(a[i].clone());
            i += 1;
        } else if kb < ka {
            let v = b[j].1.mul(c);
            if !v.is_zero() {
                out.push((kb, v));
            }
            j += 1;
        } else {
            let v = a[i].1.add(&b[j].1.mul(c));
            if !v.is_zero() {
                out.push((ka, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn scale(v: &SVec, c: &Scalar) -> SVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x.mul(c))).collect()
}

#[derive(Clone, Debug)]
struct Row {
    v: SVec,
    tags: SVec,
}

/// Incremental row echelon form that remembers how each row was formed from the inserted
/// vectors. Inserting a dependent vector yields the linear relation, which is how kernels
/// are computed; decomposing a vector expresses it through the inserted ones.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Field,
    rows: Vec<Row>,
    pivots: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new(field: Field) -> Echelon {
        Echelon { field, rows: Vec::new(), pivots: HashMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Returns `(residual, combo)` with `v = residual + Σ combo_j · inserted_j`.
    pub fn reduce(&self, v: &SVec) -> (SVec, SVec) {
        let mut r = v.clone();
        let mut combo: SVec = Vec::new();
        let mut pos = 0;
        while pos < r.len() {
            let (k, c) = (r[pos].0, r[pos].1.clone());
            match self.pivots.get(&k) {
                Some(&ri) => {
                    let row = &self.rows[ri];
                    r = axpy(&r, &c.neg(), &row.v);
                    combo = axpy(&combo, &c, &row.tags);
                }
                None => pos += 1,
            }
        }
        (r, combo)
    }

    /// Inserts `v` labelled by tag vector `tags`. Returns the relation among tags if `v`
    /// is dependent on what is already present.
    pub fn insert(&mut self, v: &SVec, tags: SVec) -> Option<SVec> {
        let (r, combo) = self.reduce(v);
        let t = axpy(&tags, &self.field.int(-1), &combo);
        if r.is_empty() {
            return Some(t);
        }
        let lead = r[0].1.inv().expect("nonzero lead");
        let row = Row { v: scale(&r, &lead), tags: scale(&t, &lead) };
        self.pivots.insert(r[0].0, self.rows.len());
        self.rows.push(row);
        None
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Combination of inserted vectors equal to `v`, if one exists.
    pub fn decompose(&self, v: &SVec) -> Option<SVec> {
        let (r, combo) = self.reduce(v);
        r.is_empty().then_some(combo)
    }
}

/// Kernel of the map whose columns are `cols`, as vectors in the source basis.
pub fn kernel(field: Field, cols: &[SVec]) -> Vec<SVec> {
    let mut ech = Echelon::new(field);
    let mut ker = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if let Some(rel) = ech.insert(c, vec![(j, field.one())]) {
            ker.push(rel);
        }
    }
    ker
}

pub fn rank(field: Field, cols: &[SVec]) -> usize {
    let mut ech = Echelon::new(field);
    for c in cols {
        ech.insert(c, Vec::new());
    }
    ech.rank()
}

/// Solves `Σ x_j cols_j = b`. Returns a particular solution and a kernel basis.
pub fn solve(field: Field, cols: &[SVec], b: &SVec) -> Option<(SVec, Vec<SVec>)> {
    let mut ech = Echelon::new(field);
    let mut ker = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if let Some(rel) = ech.insert(c, vec![(j, field.one())]) {
            ker.push(rel);
        }
    }
    ech.decompose(b).map(|x| (x, ker))
}

/// Applies the map with columns `cols` to `x`.
pub fn apply(field: Field, cols: &[SVec], x: &SVec) -> SVec {
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (j, c) in x {
        for (i, a) in &cols[*j] {
            let e = acc.entry(*i).or_insert_with(|| field.zero());
            *e = e.add(&a.mul(c));
        }
    }
    svec_from_map(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(f: &Field, xs: &[i64]) -> SVec {
        xs.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, f.int(x))).collect()
    }

    #[test]
    fn kernel_and_rank() {
        let f = Field::Rationals;
        let cols = vec![v(&f, &[1, 2]), v(&f, &[2, 4]), v(&f, &[0, 1])];
        assert_eq!(rank(f, &cols), 2);
        let k = kernel(f, &cols);
        assert_eq!(k.len(), 1);
        assert!(apply(f, &cols, &k[0]).is_empty());
    }

    #[test]
    fn solve_system() {
        let f = Field::Prime(5);
        let cols = vec![v(&f, &[1, 1, 0]), v(&f, &[0, 1, 1])];
        let b = v(&f, &[1, 3, 2]);
        let (x, ker) = solve(f, &cols, &b).unwrap();
        assert!(ker.is_empty());
        assert_eq!(apply(f, &cols, &x), b);
        assert!(solve(f, &cols, &v(&f, &[1, 0, 0])).is_none());
    }
}
