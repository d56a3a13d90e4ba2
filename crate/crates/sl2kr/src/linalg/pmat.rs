use crate::ring::{Field, Poly, Scalar};

/// Dense matrix with polynomial entries (over the base ring `k[E_1..E_N]`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Poly>,
}

impl PMat {
    pub fn zero(rows: usize, cols: usize) -> PMat {
        PMat { rows, cols, data: vec![Poly::zero(); rows * cols] }
    }

    pub fn identity(n: usize, f: &Field) -> PMat {
        let mut m = PMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(f));
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.data[i * self.cols + j] = p;
    }

    pub fn add_to(&mut self, i: usize, j: usize, p: &Poly) {
        self.data[i * self.cols + j].add_assign(p);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|p| p.is_zero())
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|p| !p.is_zero()).count()
    }

    pub fn column(&self, j: usize) -> Vec<Poly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, o: &PMat) -> PMat {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut r = PMat::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        r.data[i * o.cols + j].add_assign(&a.mul(b));
                    }
                }
            }
        }
        r
    }

    pub fn add(&self, o: &PMat) -> PMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        PMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, o: &PMat) -> PMat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        PMat { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&o.data).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> PMat {
        PMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn map_entries(&self, f: impl Fn(&Poly) -> Poly) -> PMat {
        PMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> PMat {
        let mut r = PMat::zero(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                r.set(a, b, self.get(i, j).clone());
            }
        }
        r
    }

    /// Places `o` with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, o: &PMat) {
        for i in 0..o.rows {
            for j in 0..o.cols {
                self.set(r0 + i, c0 + j, o.get(i, j).clone());
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_mul() {
        let f = Field::Rationals;
        let mut m = PMat::zero(2, 2);
        m.set(0, 1, Poly::var(0, &f));
        m.set(1, 0, Poly::int(&f, 3));
        assert_eq!(PMat::identity(2, &f).mul(&m), m);
        let sq = m.mul(&m);
        assert_eq!(sq.get(0, 0), &Poly::var(0, &f).scale(&f.int(3)));
    }
}
