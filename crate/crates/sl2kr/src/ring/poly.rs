use std::collections::BTreeMap;
use std::fmt;

use smallvec::SmallVec;

use super::scalar::{Field, Scalar};

/// Exponent vector with trailing zeros trimmed, so polynomials embed freely into larger alphabets.
pub type Exps = SmallVec<[u8; 16]>;

fn trim(mut e: Exps) -> Exps {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

fn mul_exps(a: &Exps, b: &Exps) -> Exps {
    let n = a.len().max(b.len());
    let mut r: Exps = SmallVec::with_capacity(n);
    for i in 0..n {
        r.push(a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0));
    }
    r
}

/// Variable names and q-degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    pub names: Vec<String>,
    pub weights: Vec<i64>,
}

impl Alphabet {
    /// `x_1..x_a`, each of degree 2.
    pub fn xs(a: usize) -> Alphabet {
        Alphabet {
            names: (1..=a).map(|i| format!("x{i}")).collect(),
            weights: vec![2; a],
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn mono_degree(&self, e: &Exps) -> i64 {
        e.iter().enumerate().map(|(i, &k)| self.weights[i] * k as i64).sum()
    }
}

/// Sparse polynomial: exponent vector to nonzero coefficient.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Exps, Scalar>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::monomial(Exps::new(), c)
    }

    pub fn int(f: &Field, n: i64) -> Poly {
        Poly::constant(f.int(n))
    }

    pub fn one(f: &Field) -> Poly {
        Poly::int(f, 1)
    }

    pub fn var(i: usize, f: &Field) -> Poly {
        let mut e: Exps = SmallVec::from_elem(0, i + 1);
        e[i] = 1;
        Poly::monomial(e, f.one())
    }

    pub fn monomial(e: Exps, c: Scalar) -> Poly {
        let mut p = Poly::zero();
        if !c.is_zero() {
            p.terms.insert(trim(e), c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Exps, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, e: &Exps) -> Option<&Scalar> {
        self.terms.get(e)
    }

    /// The constant value if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => None,
            1 => self.terms.get(&Exps::new()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, e: Exps, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = v.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add_assign(&mut self, o: &Poly) {
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    /// `self += c * m * o` where `m` is a monomial.
    pub fn add_scaled_shifted(&mut self, o: &Poly, c: &Scalar, m: &Exps) {
        for (e, d) in &o.terms {
            self.add_term(mul_exps(e, m), d.mul(c));
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.neg());
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, d)| (e.clone(), d.mul(c))).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                r.add_term(mul_exps(e, f), c.mul(d));
            }
        }
        r
    }

    pub fn pow(&self, k: u32, f: &Field) -> Poly {
        let mut r = Poly::one(f);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Degree of every term, or `None` for the zero polynomial or an inhomogeneous one.
    pub fn degree(&self, a: &Alphabet) -> Option<i64> {
        let mut it = self.terms.keys().map(|e| a.mono_degree(e));
        let d = it.next()?;
        it.all(|x| x == d).then_some(d)
    }

    pub fn is_homogeneous(&self, a: &Alphabet) -> bool {
        self.is_zero() || self.degree(a).is_some()
    }

    /// Homogeneous component of degree `d`.
    pub fn component(&self, a: &Alphabet, d: i64) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| a.mono_degree(e) == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn max_var(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut r = Poly::zero();
        for (e, c) in &self.terms {
            let k = e.get(i).copied().unwrap_or(0);
            if k == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            r.add_term(f, c.mul_int(k as i64));
        }
        r
    }

    /// Derivation sending variable `i` to `images[i]` (variables beyond the slice go to 0).
    pub fn derivation(&self, images: &[Poly]) -> Poly {
        let mut r = Poly::zero();
        for (i, img) in images.iter().enumerate() {
            if img.is_zero() {
                continue;
            }
            let d = self.derivative(i);
            if !d.is_zero() {
                r.add_assign(&d.mul(img));
            }
        }
        r
    }

    /// Ring homomorphism: variable `i` goes to `images[i]`; variables past the slice are kept.
    pub fn subst(&self, images: &[Poly], f: &Field) -> Poly {
        let mut r = Poly::zero();
        let mut cache: Vec<Vec<Poly>> = vec![Vec::new(); images.len()];
        for (e, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            let mut rest: Exps = SmallVec::new();
            for (i, &k) in e.iter().enumerate() {
                if i < images.len() {
                    if k == 0 {
                        continue;
                    }
                    let pw = &mut cache[i];
                    if pw.is_empty() {
                        pw.push(Poly::one(f));
                    }
                    while pw.len() <= k as usize {
                        let nx = pw.last().unwrap().mul(&images[i]);
                        pw.push(nx);
                    }
                    t = t.mul(&pw[k as usize]);
                    rest.push(0);
                } else {
                    rest.push(k);
                }
            }
            if rest.iter().any(|&k| k > 0) {
                t = t.mul(&Poly::monomial(rest, f.one()));
            }
            r.add_assign(&t);
        }
        r
    }

    /// Moves variable `i` to position `map[i]`.
    pub fn rename(&self, map: &[usize]) -> Poly {
        let mut r = Poly::zero();
        for (e, c) in &self.terms {
            let mut f: Exps = SmallVec::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let j = map[i];
                if f.len() <= j {
                    f.resize(j + 1, 0);
                }
                f[j] += k;
            }
            r.add_term(f, c.clone());
        }
        r
    }

    /// Terms in graded-lexicographic order (degree ascending, then exponent vectors lexicographically descending).
    pub fn sorted_terms(&self, a: &Alphabet) -> Vec<(Exps, Scalar)> {
        let mut v: Vec<(Exps, Scalar)> = self.terms.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
        v.sort_by(|(e, _), (f, _)| {
            a.mono_degree(e).cmp(&a.mono_degree(f)).then_with(|| {
                let n = e.len().max(f.len());
                let pad = |x: &Exps| (0..n).map(|i| x.get(i).copied().unwrap_or(0)).collect::<Vec<_>>();
                pad(f).cmp(&pad(e))
            })
        });
        v
    }

    pub fn fmt_with(&self, a: &Alphabet) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.sorted_terms(a).into_iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { a.names[i].clone() } else { format!("{}^{}", a.names[i], k) })
                .collect();
            if mono.is_empty() {
                s.push_str(&c.to_string());
            } else if c.is_one() {
                s.push_str(&mono.join("*"));
            } else {
                s.push_str(&format!("{}*{}", c, mono.join("*")));
            }
        }
        s
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.max_var();
        let a = Alphabet { names: (0..n).map(|i| format!("v{i}")).collect(), weights: vec![2; n] };
        write!(f, "{}", self.fmt_with(&a))
    }
}
