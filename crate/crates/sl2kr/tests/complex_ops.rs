use std::collections::BTreeMap;

use sl2kr::complex::{
    check_equivariance, cobordism_map, frame_correct, invariance_suite, resolve_crossing, run_case, slide_green_dot, CanonicalReport, ChainMap,
    Cube, CubeOptions, Elementary, Framing, GreenDot, LinkDiagram, Outcome, Setup, SuiteCase,
};
use sl2kr::homology::Window;
use sl2kr::linalg::PMat;
use sl2kr::ring::{Field, Poly, Sl2};
use sl2kr::Error;

fn q() -> Field {
    Field::Rationals
}

fn opts() -> CubeOptions {
    CubeOptions::new(2, q())
}

fn cube(d: &LinkDiagram) -> Cube {
    Cube::new(d, &opts()).unwrap()
}

fn hopf() -> LinkDiagram {
    LinkDiagram::from_braid(2, &[1, 1]).unwrap()
}

fn trefoil() -> LinkDiagram {
    LinkDiagram::from_braid(2, &[1, 1, 1]).unwrap()
}

fn window() -> Window {
    Window::new(-12, 16, 2).unwrap()
}

fn compose(a: &ChainMap, b: &ChainMap) -> ChainMap {
    let maps = b.maps.iter().filter_map(|(t, m)| a.maps.get(t).map(|n| (*t, n.mul(m)))).collect();
    ChainMap { degree: a.degree + b.degree, maps }
}

fn e(i: usize) -> Poly {
    Poly::var(i - 1, &q())
}

fn times(m: &PMat, p: &Poly) -> PMat {
    m.map_entries(|x| x.mul(p))
}

#[test]
fn local_complexes() {
    let f = q();
    let half = f.frac(1, 2).unwrap();
    for n in [2, 3] {
        let pos = resolve_crossing(1, n, f, half.clone(), half.clone()).unwrap();
        assert_eq!((pos.source.t, pos.source.q, pos.target.t, pos.target.q), (0, 0, 1, -1));
        let neg = resolve_crossing(-1, n, f, half.clone(), half.clone()).unwrap();
        assert_eq!((neg.source.t, neg.source.q, neg.target.t, neg.target.q), (-1, 1, 0, 0));
        assert_eq!(pos.check_equivariance().unwrap(), None);
        assert_eq!(neg.check_equivariance().unwrap(), None);
    }
    // at t1 = t2 = 1/2 the dumbbell dots carry h-constants of total size t1 + t2 = 1
    let pos = resolve_crossing(1, 2, f, half.clone(), half.clone()).unwrap();
    assert_eq!(pos.dots, [half.clone(), half.clone()]);
    assert_eq!(pos.dot_h(), f.int(-1));
    let t1 = f.frac(1, 3).unwrap();
    let t2 = f.int(2);
    let neg = resolve_crossing(-1, 2, f, t1.clone(), t2.clone()).unwrap();
    assert_eq!(neg.dots, [t1.sub(&f.one()), t2.sub(&f.one())]);
}

#[test]
fn equivariance_report() {
    let r = check_equivariance(&cube(&hopf()));
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.edges, 4);
    let empty = check_equivariance(&cube(&LinkDiagram::unlink(1)));
    assert!(empty.passed() && empty.edges == 0);

    // drop the twist at one vertex: the checker must point at an edge through it
    let c = cube(&trefoil());
    let broken = c.without_twist(3);
    let r = check_equivariance(&broken);
    assert!(!r.passed());
    let fl = r.equivariance.clone().expect("equivariance failure");
    assert!(fl.check.starts_with('F') || fl.check.starts_with('H'), "{fl:?}");
    let (row, col) = r.location.unwrap();
    let label = &broken.vertices[3].space.label;
    assert!(row.starts_with(label.as_str()) || col.starts_with(label.as_str()), "{row} {col}");
}

#[test]
fn green_dot_slides() {
    let d = hopf();
    let e0 = d.crossings[0].bl;
    let mut o = opts();
    o.dots = vec![GreenDot { edge: e0, solid: false, mult: q().int(1) }];
    let c = Cube::new(&d, &o).unwrap();
    let s = slide_green_dot(&c, 0, 0).unwrap();
    assert_eq!(s.opts.dots[0].edge, d.crossings[0].tr);
    assert_ne!(s.opts.dots[0].edge, e0);
    assert!(check_equivariance(&s).passed());
    assert_eq!(CanonicalReport::of(&c, window()).unwrap(), CanonicalReport::of(&s, window()).unwrap());
    let far = (0..d.n_edges).find(|&e| ![d.crossings[0].bl, d.crossings[0].br, d.crossings[0].tl, d.crossings[0].tr].contains(&e));
    if let Some(e) = far {
        o.dots[0].edge = e;
        assert!(matches!(slide_green_dot(&Cube::new(&d, &o).unwrap(), 0, 0), Err(Error::Location(_))));
    }
    assert!(matches!(slide_green_dot(&c, 1, 0), Err(Error::Location(_))));
}

#[test]
fn zero_dots_change_nothing() {
    let d = hopf();
    let mut o = opts();
    o.dots = vec![GreenDot { edge: 0, solid: true, mult: q().zero() }, GreenDot { edge: 1, solid: false, mult: q().zero() }];
    let plain = cube(&d).chain();
    let dotted = Cube::new(&d, &o).unwrap().chain();
    assert_eq!(plain.d, dotted.d);
    for t in plain.degrees() {
        for g in Sl2::ALL {
            assert_eq!(plain.m_at(t, g), dotted.m_at(t, g));
        }
    }
}

#[test]
fn hollow_and_solid_pair_is_central() {
    let f = q();
    let lambda = f.frac(2, 3).unwrap();
    let d = hopf();
    let mut o = opts();
    o.dots = vec![GreenDot { edge: 2, solid: false, mult: lambda.clone() }, GreenDot { edge: 2, solid: true, mult: lambda.clone() }];
    let plain = cube(&d).chain();
    let pair = Cube::new(&d, &o).unwrap().chain();
    for t in plain.degrees() {
        let id = PMat::identity(plain.dim(t), &f);
        assert_eq!(pair.m_at(t, Sl2::E), plain.m_at(t, Sl2::E));
        assert_eq!(pair.m_at(t, Sl2::F), plain.m_at(t, Sl2::F).add(&times(&id, &e(1).scale(&lambda))));
        assert_eq!(pair.m_at(t, Sl2::H), plain.m_at(t, Sl2::H).add(&id.scale(&lambda.mul_int(-2))));
    }
}

#[test]
fn framing_correction() {
    let unknot = cube(&LinkDiagram::unlink(1));
    let zero = frame_correct(&unknot, Framing::Unframed(Some(vec![0]))).unwrap();
    assert_eq!(zero.chain().d, unknot.chain().d);
    assert_eq!(zero.twists, unknot.twists);

    let curl = LinkDiagram::from_braid(2, &[1]).unwrap();
    let framed = Cube::new(&curl, &CubeOptions { framing: Framing::Framed, ..opts() }).unwrap();
    let unframed = frame_correct(&framed, Framing::Unframed(None)).unwrap();
    let base = CanonicalReport::of(&unknot, window()).unwrap();
    assert_eq!(CanonicalReport::of(&unframed, window()).unwrap(), base);
    assert!(CanonicalReport::of(&framed, window()).unwrap().diff(&base).is_some());
    // h-twist of -(N-1) per unit of framing, i.e. -1 at N = 2
    assert_eq!(unframed.framing_h, q().int(-1));
}

#[test]
fn cup_and_cap_on_the_unknot() {
    let f = q();
    let empty = cube(&LinkDiagram::empty());
    let o = cube(&LinkDiagram::unlink(1));
    let cup = cobordism_map(Elementary::Cup, 0, &empty, &o).unwrap();
    let m = &cup.maps[&0];
    assert_eq!((m.rows, m.cols), (2, 1));
    assert_eq!(m.column(0), vec![Poly::one(&f), Poly::zero()]);
    assert_eq!(cup.degree, -1);

    let cap = cobordism_map(Elementary::Cap, 0, &o, &empty).unwrap();
    let dot = cobordism_map(Elementary::Dot, 0, &o, &o).unwrap();
    assert!(compose(&cap, &cup).maps[&0].is_zero());
    assert_eq!(compose(&cap, &compose(&dot, &cup)).maps[&0], PMat::identity(1, &f));

    // the base-point action on A = Q[E1, E2][x] / (x^2 - E1 x + E2)
    let x = &dot.maps[&0];
    let rel = x.mul(x).sub(&times(x, &e(1))).add(&times(&PMat::identity(2, &f), &e(2)));
    assert!(rel.is_zero());
}

#[test]
fn cobordism_maps_are_chain_maps() {
    for d in [trefoil(), hopf(), LinkDiagram::from_braid(2, &[1, -1]).unwrap()] {
        let small = cube(&d);
        let big = cube(&d.with_unknot());
        let (cs, cb) = (small.chain(), big.chain());
        let edge = d.crossings[0].tl;
        let cases = [
            (Elementary::Cup, &small, &big, &cs, &cb),
            (Elementary::Cap, &big, &small, &cb, &cs),
            (Elementary::Split, &small, &big, &cs, &cb),
            (Elementary::Merge, &big, &small, &cb, &cs),
            (Elementary::Dot, &small, &small, &cs, &cs),
        ];
        for (kind, src, tgt, a, b) in cases {
            let m = cobordism_map(kind, edge, src, tgt).unwrap();
            assert!(m.commutes(a, b), "{kind:?} on {}", d.normalized());
        }
        // merge after split is multiplication by 2x - E1 at N = 2
        let split = cobordism_map(Elementary::Split, edge, &small, &big).unwrap();
        let merge = cobordism_map(Elementary::Merge, edge, &big, &small).unwrap();
        let dot = cobordism_map(Elementary::Dot, edge, &small, &small).unwrap();
        let both = compose(&merge, &split);
        for (t, m) in &both.maps {
            let want = dot.maps[t].scale(&q().int(2)).sub(&times(&PMat::identity(m.rows, &q()), &e(1)));
            assert_eq!(*m, want);
        }
    }
}

#[test]
fn cobordism_location_errors() {
    let h = cube(&hopf());
    let t = cube(&trefoil());
    assert!(matches!(cobordism_map(Elementary::Cup, 0, &h, &t), Err(Error::Location(_))));
    assert!(matches!(cobordism_map(Elementary::Dot, 99, &h, &h), Err(Error::Location(_))));
    assert!(matches!(cobordism_map(Elementary::Dot, 0, &h, &t), Err(Error::Location(_))));
}

#[test]
fn suite_passes_and_detects_differences() {
    let results = invariance_suite(&opts(), window()).unwrap();
    assert_eq!(results.len(), 10);
    for r in &results {
        assert_eq!(r.outcome, Outcome::Pass, "{}", r.name);
    }
    let bad = SuiteCase {
        name: "hopf is not the unlink".into(),
        setups: [LinkDiagram::unlink(2), hopf()]
            .into_iter()
            .map(|diagram| Setup { diagram, framing: Framing::Unframed(None), dots: vec![] })
            .collect(),
    };
    assert!(matches!(run_case(&bad, &opts(), window()).outcome, Outcome::Fail(_)));
    let shifted = SuiteCase {
        name: "a dot shifts the weights".into(),
        setups: vec![
            Setup { diagram: hopf(), framing: Framing::Unframed(None), dots: vec![] },
            Setup {
                diagram: hopf(),
                framing: Framing::Unframed(None),
                dots: vec![GreenDot { edge: 0, solid: false, mult: q().int(1) }],
            },
        ],
    };
    assert!(matches!(run_case(&shifted, &opts(), window()).outcome, Outcome::Fail(_)));
}

#[test]
fn suite_at_n3_reports_unsupported_diagrams() {
    let results = invariance_suite(&CubeOptions::new(3, q()), Window::new(-14, 16, 3).unwrap()).unwrap();
    let by_name: BTreeMap<_, _> = results.iter().map(|r| (r.name.as_str(), &r.outcome)).collect();
    assert_eq!(by_name["RII braidlike [1,-1]"], &Outcome::Pass);
    assert_eq!(by_name["framed RI positive"], &Outcome::Pass);
    assert!(matches!(by_name["RIII positive"], Outcome::Unsupported(_)));
}
