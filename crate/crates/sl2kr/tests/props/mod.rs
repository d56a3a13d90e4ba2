//! Strategies and checks shared by the property tests and the acceptance run.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use sl2kr::ring::{base_alphabet, sl2_on_base, sl2_on_poly, Alphabet, Exps, Field, Poly, Sl2, SymBasis, SymFunc};
use sl2kr::ring::symfunc::elementary;

pub fn q() -> Field {
    Field::Rationals
}

pub fn poly(nvars: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u8..3, nvars), -6i64..=6), 0..5).prop_map(|terms| {
        let mut p = Poly::zero();
        for (e, c) in terms {
            p.add_term(Exps::from_slice(&e), q().int(c));
        }
        p
    })
}

fn commutator(a: Sl2, b: Sl2, r: &Poly, act: &dyn Fn(Sl2, &Poly) -> Poly) -> Poly {
    act(a, &act(b, r)).sub(&act(b, &act(a, r)))
}

/// Leibniz rule and the sl2 relations for the action on `k[E_1..E_N]`.
pub fn check_base_action(n: usize, a: &Poly, b: &Poly) -> Result<(), TestCaseError> {
    let f = q();
    let act = |g: Sl2, r: &Poly| sl2_on_base(g, r, n, &f);
    for g in Sl2::ALL {
        let lhs = act(g, &a.mul(b));
        let rhs = act(g, a).mul(b).add(&a.mul(&act(g, b)));
        prop_assert_eq!(lhs, rhs, "Leibniz for {:?}", g);
    }
    prop_assert_eq!(commutator(Sl2::H, Sl2::E, a, &act), act(Sl2::E, a).scale(&f.int(2)));
    prop_assert_eq!(commutator(Sl2::H, Sl2::F, a, &act), act(Sl2::F, a).scale(&f.int(-2)));
    prop_assert_eq!(commutator(Sl2::E, Sl2::F, a, &act), act(Sl2::H, a));
    // h is minus the degree on homogeneous pieces
    let alpha = base_alphabet(n);
    for d in a.terms().map(|(e, _)| alpha.mono_degree(e)).collect::<std::collections::BTreeSet<_>>() {
        let piece = a.component(&alpha, d);
        prop_assert_eq!(act(Sl2::H, &piece), piece.scale(&f.int(-d)));
    }
    Ok(())
}

/// Leibniz rule for the action on roots, and compatibility with symmetric functions:
/// acting on `e_k(x)` and expanding agrees with expanding the action on `E_k`.
pub fn check_root_action(n: usize, a: &Poly, b: &Poly) -> Result<(), TestCaseError> {
    let f = q();
    let xs = Alphabet::xs(n);
    let act = |g: Sl2, r: &Poly| sl2_on_poly(g, r, &xs, &f);
    for g in Sl2::ALL {
        prop_assert_eq!(act(g, &a.mul(b)), act(g, a).mul(b).add(&a.mul(&act(g, b))));
    }
    let es: Vec<Poly> = (1..=n).map(|k| elementary(k, n, &f)).collect();
    for g in Sl2::ALL {
        let up = act(g, &a.subst(&es, &f));
        let down = sl2_on_base(g, a, n, &f).subst(&es, &f);
        prop_assert_eq!(up, down, "{:?} on symmetric functions", g);
    }
    Ok(())
}

fn power_sum(k: usize, a: usize) -> Poly {
    let mut r = Poly::zero();
    for i in 0..a {
        let mut e = vec![0u8; a];
        e[i] = k as u8;
        r.add_term(Exps::from_slice(&e), q().one());
    }
    r
}

/// Newton's identities in explicit variables and agreement of all basis conversions.
pub fn check_newton(a: usize, k: usize, g: &Poly) -> Result<(), TestCaseError> {
    let f = q();
    // k e_k = Σ_{i=1..k} (-1)^{i-1} e_{k-i} p_i
    let lhs = elementary(k, a, &f).scale(&f.int(k as i64));
    let mut rhs = Poly::zero();
    for i in 1..=k {
        let t = if k == i { Poly::one(&f) } else { elementary(k - i, a, &f) }.mul(&power_sum(i, a));
        rhs = if i % 2 == 1 { rhs.add(&t) } else { rhs.sub(&t) };
    }
    prop_assert_eq!(lhs, rhs);
    let s = SymFunc { size: a, basis: SymBasis::E, poly: g.clone(), field: f };
    for t in [SymBasis::H, SymBasis::P] {
        let c = s.convert(t).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(c.expand(), s.expand());
        prop_assert_eq!(c.convert(SymBasis::E).unwrap().poly, g.clone());
    }
    Ok(())
}

/// Substitution is a ring homomorphism.
pub fn check_subst(a: &Poly, b: &Poly, imgs: &[Poly]) -> Result<(), TestCaseError> {
    let f = q();
    prop_assert_eq!(a.mul(b).subst(imgs, &f), a.subst(imgs, &f).mul(&b.subst(imgs, &f)));
    prop_assert_eq!(a.add(b).subst(imgs, &f), a.subst(imgs, &f).add(&b.subst(imgs, &f)));
    Ok(())
}

pub fn base_case() -> impl Strategy<Value = (usize, Poly, Poly)> {
    (2usize..=4).prop_flat_map(|n| (Just(n), poly(n), poly(n)))
}

pub fn root_case() -> impl Strategy<Value = (usize, Poly, Poly)> {
    (2usize..=3).prop_flat_map(|n| (Just(n), poly(n), poly(n)))
}

pub fn newton_case() -> impl Strategy<Value = (usize, usize, Poly)> {
    (1usize..=3).prop_flat_map(|a| (Just(a), 1..=a, poly(a)))
}

pub fn subst_case() -> impl Strategy<Value = (Poly, Poly, Vec<Poly>)> {
    (poly(3), poly(3), prop::collection::vec(poly(2), 3))
}
