use super::poly::{Alphabet, Poly};
use super::scalar::Field;

/// Generators of sl2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sl2 {
    E,
    F,
    H,
}

impl Sl2 {
    pub const ALL: [Sl2; 3] = [Sl2::E, Sl2::F, Sl2::H];

    /// q-degree shift of the operator.
    pub fn q_shift(self) -> i64 {
        match self {
            Sl2::E => -2,
            Sl2::F => 2,
            Sl2::H => 0,
        }
    }
}

/// Natural action on a polynomial algebra in variables of degree 2 that behave like roots:
/// `e = -Σ ∂_i`, `f = Σ x_i² ∂_i`, `h = -deg`.
pub fn sl2_on_poly(g: Sl2, r: &Poly, a: &Alphabet, field: &Field) -> Poly {
    let images: Vec<Poly> = (0..a.len())
        .map(|i| {
            let x = Poly::var(i, field);
            match g {
                Sl2::E => Poly::int(field, -1),
                Sl2::F => x.mul(&x),
                Sl2::H => x.scale(&field.int(-a.weights[i])),
            }
        })
        .collect();
    r.derivation(&images)
}

/// `k[E_1..E_N]` with `deg E_i = 2i`.
pub fn base_alphabet(n: usize) -> Alphabet {
    Alphabet {
        names: (1..=n).map(|i| format!("E{i}")).collect(),
        weights: (1..=n as i64).map(|i| 2 * i).collect(),
    }
}

/// Images of `E_1..E_N` under `g`, obtained from the action on the roots:
/// `e(E_i) = -(N-i+1) E_{i-1}`, `f(E_i) = E_1 E_i - (i+1) E_{i+1}`, `h(E_i) = -2i E_i`.
pub fn base_images(g: Sl2, n: usize, field: &Field) -> Vec<Poly> {
    let e = |i: usize| {
        if i == 0 {
            Poly::one(field)
        } else if i > n {
            Poly::zero()
        } else {
            Poly::var(i - 1, field)
        }
    };
    (1..=n)
        .map(|i| match g {
            Sl2::E => e(i - 1).scale(&field.int(-((n - i + 1) as i64))),
            Sl2::F => e(1).mul(&e(i)).sub(&e(i + 1).scale(&field.int((i + 1) as i64))),
            Sl2::H => e(i).scale(&field.int(-2 * i as i64)),
        })
        .collect()
}

/// Action of `g` on `k[E_1..E_N]`.
pub fn sl2_on_base(g: Sl2, r: &Poly, n: usize, field: &Field) -> Poly {
    r.derivation(&base_images(g, n, field))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::symfunc::elementary;

    #[test]
    fn examples() {
        let f = Field::Rationals;
        let a = Alphabet::xs(2);
        let e1 = elementary(1, 2, &f);
        assert_eq!(sl2_on_poly(Sl2::H, &e1, &a, &f), e1.scale(&f.int(-2)));
        assert_eq!(sl2_on_poly(Sl2::E, &e1, &a, &f), Poly::int(&f, -2));
        let x1 = Poly::var(0, &f);
        let x2 = Poly::var(1, &f);
        assert_eq!(sl2_on_poly(Sl2::F, &e1, &a, &f), x1.mul(&x1).add(&x2.mul(&x2)));
    }

    #[test]
    fn base_action_matches_roots() {
        let f = Field::Rationals;
        for n in 1..=4 {
            let xs = Alphabet::xs(n);
            let es: Vec<Poly> = (1..=n).map(|i| elementary(i, n, &f)).collect();
            for g in Sl2::ALL {
                let imgs = base_images(g, n, &f);
                for i in 0..n {
                    let direct = sl2_on_poly(g, &es[i], &xs, &f);
                    assert_eq!(imgs[i].subst(&es, &f), direct, "n={n} g={g:?} i={}", i + 1);
                }
            }
        }
    }
}
