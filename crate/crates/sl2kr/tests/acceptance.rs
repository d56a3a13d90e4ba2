//! One PASS/FAIL line per acceptance criterion. All comparisons are exact; the runtime bounds
//! below are part of the criteria.

mod props;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use proptest::test_runner::{Config, TestRunner};
use smallvec::smallvec;
use sl2kr::complex::{invariance_suite, Cube, CubeOptions, Framing, LinkDiagram, Outcome};
use sl2kr::homology::{Homology, Kind, Op, Relation, Window};
use sl2kr::invariants::{moy_polynomial, pdg_e_homology, pdg_f_homology, rasmussen_s, CyclotomicValue};
use sl2kr::ring::{Field, Sl2};
use sl2kr::webfoam::FoamKind;

type Outcome_ = Result<String, String>;

const FIGURE_EIGHT_PD: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

fn q() -> Field {
    Field::Rationals
}

fn braid(k: usize, w: &[i32]) -> LinkDiagram {
    LinkDiagram::from_braid(k, w).unwrap()
}

fn unknot() -> LinkDiagram {
    LinkDiagram::unlink(1)
}

fn hopf() -> LinkDiagram {
    braid(2, &[1, 1])
}

fn homology(d: &LinkDiagram) -> Homology {
    let c = Cube::new(d, &CubeOptions::new(2, q())).unwrap().chain();
    Homology::with_default_window(&c)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn unknot_tables() -> Outcome_ {
    let start = Instant::now();
    let h = homology(&unknot());
    let (lo, hi) = h.window.certified();
    ensure(hi >= 21, || format!("certified window ends at {hi}"))?;
    for qd in lo..=hi {
        // q^{-1} / (1 - q^2)^2
        let want = if qd >= -1 && (qd + 1) % 2 == 0 { ((qd + 1) / 2 + 1) as usize } else { 0 };
        ensure(h.dim(0, qd) == want, || format!("dim at q = {qd} is {}, expected {want}", h.dim(0, qd)))?;
    }
    for row in h.weight_table().map_err(|e| e.to_string())? {
        // weight 1 - 2n sits in degree q = 2n - 1 with dimension n + 1
        let n = (row.q + 1) / 2;
        ensure(row.weight == q().int(1 - 2 * n) && row.dim as i64 == n + 1, || format!("{row:?}"))?;
    }
    let r = h.decompose().map_err(|e| e.to_string())?;
    let s = r.summary(0);
    ensure(s.get(&(Kind::Projective, -3)) == Some(&1) && s.get(&(Kind::Verma, -1)) == Some(&1), || format!("{s:?}"))?;
    ensure(!s.contains_key(&(Kind::Verma, -3)), || "unexpected M(-3)".into())?;
    for l in (5..=hi).step_by(2) {
        ensure(s.get(&(Kind::Verma, -l)) == Some(&1), || format!("M(-{l}) missing"))?;
    }
    ensure(s.keys().all(|(k, _)| matches!(k, Kind::Projective | Kind::Verma)), || format!("{s:?}"))?;
    ensure(r.gamma.is_empty() && r.zeta.is_empty(), || "nonzero locally finite part".into())?;
    within(start, Duration::from_secs(5))?;
    Ok(format!("dims and weights exact on q in [{lo}, {hi}]"))
}

fn hopf_tables() -> Outcome_ {
    let start = Instant::now();
    let d = hopf();
    let c = Cube::new(&d, &CubeOptions::new(2, q())).unwrap().chain();
    let s = c.simplify().complex;
    let ranks: Vec<(i64, usize)> = s.degrees().into_iter().map(|t| (t, s.dim(t))).filter(|x| x.1 > 0).collect();
    ensure(ranks == vec![(0, 2), (2, 2)], || format!("minimal ranks {ranks:?}"))?;
    ensure(s.d.values().all(|m| m.is_zero()), || "minimal complex has a differential".into())?;
    let h = Homology::with_default_window(&c);
    let f = q();
    let c = |n: i64| f.int(n);
    let gens = |t: i64| h.dims().keys().filter(|k| k.0 == t).map(|k| k.1).min().unwrap();
    let (qa, qb) = (gens(0), gens(2));
    let alpha = [
        Relation::new(Op::G(Sl2::F), 0, vec![(c(1), smallvec![1], 0)]),
        Relation::new(Op::G(Sl2::F), 1, vec![(c(1), smallvec![0, 1], 0), (c(2), smallvec![1], 1)]),
        Relation::new(Op::G(Sl2::E), 0, vec![]),
        Relation::new(Op::G(Sl2::E), 1, vec![(c(1), smallvec![], 0)]),
    ];
    let beta = [
        Relation::new(Op::G(Sl2::F), 0, vec![(c(-1), smallvec![1], 0)]),
        Relation::new(Op::G(Sl2::F), 1, vec![(c(-2), smallvec![0, 1], 0)]),
        Relation::new(Op::G(Sl2::E), 0, vec![]),
        Relation::new(Op::G(Sl2::E), 1, vec![(c(-2), smallvec![], 0)]),
    ];
    let a = h.realize(0, &[qa, qa + 2], &alpha).ok_or("no basis realizes the α table")?;
    let b = h.realize(2, &[qb, qb + 2], &beta).ok_or("no basis realizes the β table")?;
    let w = |t: i64, qd: i64| h.weight(t, qd).unwrap().unwrap();
    let ws = [w(0, a.qs[0]), w(0, a.qs[1]), w(2, b.qs[0]), w(2, b.qs[1])];
    ensure(ws == [c(-2), c(-4), c(2), c(0)], || format!("h-eigenvalues {ws:?}"))?;
    let r = h.decompose().map_err(|e| e.to_string())?;
    let mut g: Vec<(i64, Kind, i64, usize)> =
        r.gamma.iter().map(|x| (x.t, x.kind, x.lambda.as_rat().unwrap().to_i64().unwrap(), x.mult)).collect();
    g.sort();
    ensure(g == vec![(2, Kind::Simple, 0, 1), (2, Kind::Simple, 2, 1)], || format!("Γ-part {g:?}"))?;
    within(start, Duration::from_secs(10))?;
    Ok("α/β table realized, Γ = t²L(0) ⊕ t²L(2)".into())
}

fn invariance() -> Outcome_ {
    let start = Instant::now();
    let results = invariance_suite(&CubeOptions::new(2, q()), Window::new(-12, 16, 2).unwrap()).map_err(|e| e.to_string())?;
    let bad: Vec<String> =
        results.iter().filter(|r| r.outcome != Outcome::Pass).map(|r| format!("{}: {:?}", r.name, r.outcome)).collect();
    ensure(bad.is_empty(), || bad.join("; "))?;
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} cases identical", results.len()))
}

fn cube_set() -> Vec<(usize, LinkDiagram)> {
    let mut v: Vec<(usize, LinkDiagram)> = [
        unknot(),
        hopf(),
        braid(2, &[1, 1, 1]),
        braid(2, &[-1, -1, -1]),
        braid(3, &[1, -2, 1, -2]),
        LinkDiagram::from_pd(FIGURE_EIGHT_PD).unwrap(),
        braid(2, &[1, -1]),
        braid(3, &[1, 2, 1]),
        braid(2, &[1]),
    ]
    .into_iter()
    .map(|d| (2, d))
    .collect();
    for n in [3, 4] {
        v.extend([(n, hopf()), (n, braid(2, &[1, 1, 1])), (n, braid(2, &[-1, 1]))]);
    }
    v
}

fn equivariance() -> Outcome_ {
    let set = cube_set();
    for (n, d) in &set {
        let c = Cube::new(d, &CubeOptions::new(*n, q())).map_err(|e| e.to_string())?.chain();
        let name = || format!("N = {n}, {}", d.normalized());
        for fl in [c.check_d_squared(), c.check_equivariance(), c.check_sl2_relations()].into_iter().flatten() {
            return Err(format!("{}: {fl:?}", name()));
        }
        if *n == 2 {
            Homology::with_default_window(&c.simplify().complex).check_sl2_relations().map_err(|e| format!("{}: {e}", name()))?;
        }
    }
    Ok(format!("{} cubes", set.len()))
}

fn euler_bridge() -> Outcome_ {
    let cases = [unknot(), hopf(), braid(2, &[1, 1, 1]), braid(2, &[-1, -1, -1]), braid(3, &[1, -2, 1, -2])];
    for d in &cases {
        let c = Cube::new(d, &CubeOptions::new(2, q())).unwrap().chain().simplify().complex;
        let h = Homology::with_default_window(&c);
        let (lo, hi) = h.window.certified();
        let moy = moy_polynomial(d, 2, &Framing::Unframed(None)).map_err(|e| e.to_string())?;
        let series = moy.series_over_ring(2, hi);
        let euler = h.euler();
        for qd in lo..=hi {
            let (a, b) = (euler.get(&qd).copied().unwrap_or(0), series.get(&qd).copied().unwrap_or(0));
            ensure(a == b, || format!("{} at q = {qd}: homology {a}, MOY {b}", d.normalized()))?;
        }
    }
    Ok(format!("{} diagrams", cases.len()))
}

fn oracle_equivalence() -> Outcome_ {
    let cases = [
        unknot(),
        hopf(),
        braid(2, &[1, 1, 1]),
        braid(2, &[-1, -1, -1]),
        braid(3, &[1, -2, 1, -2]),
        LinkDiagram::from_pd(FIGURE_EIGHT_PD).unwrap(),
        braid(2, &[1, 1, 1, 1]),
        braid(2, &[1, -1]),
        braid(3, &[1, 2, -1, 2]),
    ];
    for d in &cases {
        let c = Cube::new(d, &CubeOptions::new(2, q())).unwrap().chain();
        let full = Homology::with_default_window(&c);
        let small = Homology::new(&c.simplify().complex, full.window);
        ensure(full.certified_dims() == small.certified_dims(), || d.normalized())?;
    }
    Ok(format!("{} diagrams", cases.len()))
}

fn rasmussen() -> Outcome_ {
    let opts = CubeOptions::new(2, q());
    let mut notes = Vec::new();
    let mut mu_failures = Vec::new();
    for (name, d, s) in [("unknot", unknot(), 0), ("right trefoil", braid(2, &[1, 1, 1]), 2), ("left trefoil", braid(2, &[-1, -1, -1]), -2)] {
        let start = Instant::now();
        let r = rasmussen_s(&d, &opts).map_err(|e| e.to_string())?;
        within(start, Duration::from_secs(30))?;
        ensure(r.lee_s == s, || format!("{name}: Lee oracle gives {}, expected {s}", r.lee_s))?;
        ensure(r.s == r.lee_s, || format!("{name}: free part gives {}, Lee oracle {}", r.s, r.lee_s))?;
        if !r.mu_check {
            mu_failures.push(format!("{name}: s = {}, μ = {}", r.s, r.mu));
        }
        notes.push(format!("{name} {}", r.s));
    }
    ensure(mu_failures.is_empty(), || format!("s values agree ({}), but s = μ - 1 fails: {}", notes.join(", "), mu_failures.join("; ")))?;
    Ok(notes.join(", "))
}

fn pdg_e() -> Outcome_ {
    let u = pdg_e_homology(&unknot(), 3).map_err(|e| e.to_string())?.image.unwrap();
    ensure(u.is_zero(), || format!("unknot image {:?}", u.coeffs))?;
    for d in [hopf(), braid(2, &[1, 1, 1])] {
        let img = pdg_e_homology(&d, 3).map_err(|e| e.to_string())?.image.unwrap();
        let moy = moy_polynomial(&d, 3, &Framing::Unframed(None)).map_err(|e| e.to_string())?;
        let want = CyclotomicValue::reduce(&moy, 3);
        ensure(img == want, || format!("{}: {:?} vs {:?}", d.normalized(), img.coeffs, want.coeffs))?;
    }
    Ok("unknot 0, Hopf and trefoil match MOY mod q⁴+q²+1".into())
}

fn pdg_f() -> Outcome_ {
    let r = pdg_f_homology(&unknot(), 2, 3).map_err(|e| e.to_string())?;
    let left: Vec<_> = r.slash.iter().filter(|b| b.certified).collect();
    ensure(left.is_empty(), || format!("certified slash blocks {left:?}"))?;
    ensure(r.blocks.iter().any(|b| b.certified), || "nothing certified".into())?;
    Ok("no certified slash homology".into())
}

fn symbolic_layer() -> Outcome_ {
    let cases = 200;
    let mut runner = TestRunner::new(Config { cases, ..Config::default() });
    let err = |e: proptest::test_runner::TestError<_>| format!("{e}");
    runner.run(&props::base_case(), |(n, a, b)| props::check_base_action(n, &a, &b)).map_err(err)?;
    runner.run(&props::root_case(), |(n, a, b)| props::check_root_action(n, &a, &b)).map_err(|e| format!("{e}"))?;
    runner.run(&props::newton_case(), |(a, k, g)| props::check_newton(a, k, &g)).map_err(|e| format!("{e}"))?;
    // degrees of the basic foams
    let table = |k: &str, a: i64, b: i64, n: i64| match k {
        "assoc" | "coassoc" | "isotopy" => 0,
        "digon_cup" | "digon_cap" => -a * b,
        "zip" | "unzip" => a * b,
        "cup" | "cap" => -a * (n - a),
        "saddle" => a * (n - a),
        _ => unreachable!(),
    };
    let mut checked = 0;
    for k in FoamKind::NAMES {
        for (a, b) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for n in [2, 3, 5] {
                let got = FoamKind::from_name(k).unwrap().degree(a, b, n).map_err(|e| e.to_string())?;
                ensure(got == table(k, a, b, n), || format!("{k} at (a, b) = ({a}, {b}), N = {n}: {got}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{} randomized checks, {checked} foam degrees", 3 * cases))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome_); 10] = [
        ("unknot homology and sl2 structure", unknot_tables),
        ("Hopf link homology and action table", hopf_tables),
        ("invariance suite", invariance),
        ("equivariance and sl2 relations", equivariance),
        ("Euler characteristic equals MOY", euler_bridge),
        ("direct and simplified homology agree", oracle_equivalence),
        ("Rasmussen invariant", rasmussen),
        ("p-DG e-theory", pdg_e),
        ("p-DG f-theory", pdg_f),
        ("symbolic layer", symbolic_layer),
    ];
    let mut failed = Vec::new();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let t = start.elapsed();
        match res {
            Ok(note) => println!("criterion {:>2} PASS  {name} ({note}; {t:.2?})", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL  {name} ({why}; {t:.2?})", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
