use sl2kr::ring::{Field, Poly, Sl2};
use sl2kr::tqft::{action_defect, check_flat, commutator, foam_matrix, sl2_ops, solve_dots, DotSlot, WebSpace};
use sl2kr::homology::Window;
use sl2kr::webfoam::{Decoration, DotKind, FoamKind, FoamWord, GreenDot, GreenDottedWeb, Params, Shape, Web};

fn q() -> Field {
    Field::Rationals
}

fn params(n: usize) -> Vec<Params> {
    let f = q();
    vec![Params::symmetric(f, n), Params::new(f, n, f.frac(1, 3).unwrap(), f.int(2))]
}

fn start(shapes: &[Shape]) -> FoamWord {
    FoamWord::identity(GreenDottedWeb::plain(Web::from_shapes(shapes)))
}

fn catalog() -> Vec<(&'static str, FoamWord)> {
    use Shape::*;
    let t = |s: &[Shape], k: FoamKind, loc: &[usize]| start(s).then(k, loc).unwrap();
    vec![
        ("cup", t(&[], FoamKind::Cup, &[])),
        ("cup beside", t(&[Circle(2)], FoamKind::Cup, &[])),
        ("thick cup", t(&[Circle(1)], FoamKind::Cup, &[2])),
        ("cap", t(&[Circle(1)], FoamKind::Cap, &[0])),
        ("cap first", t(&[Circle(1), Circle(2)], FoamKind::Cap, &[0])),
        ("thick cap", t(&[Circle(2)], FoamKind::Cap, &[0])),
        ("split", t(&[Circle(1)], FoamKind::Saddle, &[0])),
        ("merge", t(&[Circle(1), Circle(1)], FoamKind::Saddle, &[0, 1])),
        ("thick merge", t(&[Circle(2), Circle(2)], FoamKind::Saddle, &[0, 1])),
        ("digon cup", t(&[Circle(2)], FoamKind::DigonCup, &[0])),
        ("digon cap", t(&[Theta], FoamKind::DigonCap, &[0])),
        ("zip", t(&[Circle(1), Circle(1)], FoamKind::Zip, &[0, 1])),
        ("unzip", t(&[Theta], FoamKind::Unzip, &[0])),
        ("isotopy", t(&[Circle(1), Circle(2)], FoamKind::Isotopy(vec![1, 0]), &[])),
    ]
}

/// Hollow dots `-t_1`, `-t_2` on the thin edges of every theta component.
fn theta_dots(g: &mut GreenDottedWeb, p: &Params) {
    for c in 0..g.web.component_count() {
        if g.web.shape(c).unwrap() == Shape::Theta {
            let e = g.web.component_edges(c).to_vec();
            g.dots.push(GreenDot { edge: Some(e[0]), kind: DotKind::Hollow, mult: p.t1.neg() });
            g.dots.push(GreenDot { edge: Some(e[1]), kind: DotKind::Hollow, mult: p.t2.neg() });
        }
    }
}

fn dotted(mut w: FoamWord, p: &Params) -> FoamWord {
    theta_dots(&mut w.source, p);
    theta_dots(&mut w.target, p);
    w
}

#[test]
fn slices_commute_with_the_action() {
    for n in [2usize, 3] {
        for p in params(n) {
            for (name, w) in catalog().into_iter().flat_map(|(k, w)| [(k, w.clone()), (k, dotted(w, &p))]) {
                assert!(foam_matrix(&w, n, q()).unwrap().is_homogeneous(), "{name} N={n}");
                for g in Sl2::ALL {
                    let d = action_defect(g, &w, &p).unwrap();
                    assert!(d.is_zero(), "{name} N={n} g={g:?} t=({:?},{:?}): {d:?}", p.t1, p.t2);
                }
            }
        }
    }
}

#[test]
fn spheres_and_digons() {
    let f = q();
    for n in [2usize, 3, 4] {
        let cup = start(&[]).then(FoamKind::Cup, &[]).unwrap();
        let sphere = cup.clone().then(FoamKind::Cap, &[0]).unwrap();
        assert!(foam_matrix(&sphere, n, f).unwrap().matrix.is_zero());
        let x = Poly::var(0, &f).pow(n as u32 - 1, &f);
        let dotted = cup.decorate(Decoration::new(Some(0), 0, 1, x)).unwrap().then(FoamKind::Cap, &[0]).unwrap();
        let m = foam_matrix(&dotted, n, f).unwrap();
        assert_eq!(m.matrix.get(0, 0), &Poly::one(&f));
        assert_eq!(m.degree, 0);
        // removing a digon with one dot on a thin facet is the identity
        let thick = Web::circle(2);
        let w = FoamWord::identity(GreenDottedWeb::plain(thick.clone()))
            .then(FoamKind::DigonCup, &[0])
            .unwrap()
            .decorate(Decoration::new(Some(0), 0, 1, Poly::var(0, &f)))
            .unwrap()
            .then(FoamKind::DigonCap, &[0])
            .unwrap();
        let m = foam_matrix(&w, n, f).unwrap();
        let r = WebSpace::new(&thick, n, f).unwrap().rank();
        assert_eq!(m.matrix, sl2kr::linalg::PMat::identity(r, &f), "N={n}");
        assert_eq!(m.degree, 0);
        // without the dot the bubble vanishes
        let bare = FoamWord::identity(GreenDottedWeb::plain(thick))
            .then(FoamKind::DigonCup, &[0])
            .unwrap()
            .then(FoamKind::DigonCap, &[0])
            .unwrap();
        assert!(foam_matrix(&bare, n, f).unwrap().matrix.is_zero());
    }
}

fn exps(v: &[u8]) -> sl2kr::ring::Exps {
    v.iter().copied().collect()
}

#[test]
fn operators_on_the_circle() {
    let f = q();
    let p = Params::symmetric(f, 2);
    let v = WebSpace::new(&Web::circle(1), 2, f).unwrap();
    let tw = v.natural_twist(&p);
    let h = sl2_ops(&v, &tw, Window::new(-1, 7, 2).unwrap()).unwrap();
    let piece = |q: i64| h.piece(0, q).unwrap();
    let one = piece(-1).position(0, &exps(&[])).unwrap();
    // F(1) = -½ E_1
    let img = h.chain_sl2(Sl2::F, 0, -1, &vec![(one, f.one())]).unwrap();
    let e1 = piece(1).position(0, &exps(&[1])).unwrap();
    assert_eq!(img, vec![(e1, f.frac(-1, 2).unwrap())]);
    // E(E_2 · 1) = -E_1
    let e2 = piece(3).position(0, &exps(&[0, 1])).unwrap();
    let img = h.chain_sl2(Sl2::E, 0, 3, &vec![(e2, f.one())]).unwrap();
    assert_eq!(img, vec![(e1, f.int(-1))]);
    // H(1) = 1
    let img = h.chain_sl2(Sl2::H, 0, -1, &vec![(one, f.one())]).unwrap();
    assert_eq!(img, vec![(one, f.one())]);
}

#[test]
fn graded_ranks() {
    use sl2kr::ring::{qbinom, LaurentQ};
    let f = q();
    for n in 2..=4usize {
        let rank = |w: &Web| WebSpace::new(w, n, f).unwrap().graded_rank();
        assert_eq!(rank(&Web::circle(1)), qbinom(n as i64, 1).unwrap());
        assert_eq!(rank(&Web::circle(2)), qbinom(n as i64, 2).unwrap());
        // [N][N-1]
        let theta = qbinom(n as i64, 1).unwrap().mul(&qbinom(n as i64 - 1, 1).unwrap());
        assert_eq!(rank(&Web::theta()), theta);
    }
    assert_eq!(WebSpace::new(&Web::theta(), 2, f).unwrap().graded_rank(), LaurentQ::from_coeffs([(-1, 1), (1, 1)]));
}

#[test]
fn natural_twists_are_flat() {
    let f = q();
    for n in 2..=4usize {
        for pr in params(n) {
            for w in [Web::circle(1), Web::circle(2), Web::theta()] {
                let v = WebSpace::new(&w, n, f).unwrap();
                assert!(check_flat(&v.natural_twist(&pr), &v), "{w} N={n}");
            }
        }
    }
}

fn dot(edge: Option<usize>, kind: DotKind, m: i64) -> GreenDot {
    GreenDot { edge, kind, mult: q().int(m) }
}

#[test]
fn green_dot_twists() {
    let f = q();
    let p = Params::symmetric(f, 3);
    let v = WebSpace::new(&Web::circle(1), 3, f).unwrap();
    let x = v.tower.var(0);
    let e1 = v.tower.e(1);
    let g = |dots| GreenDottedWeb::new(Web::circle(1), dots);
    let hollow = v.twist_of(&g(vec![dot(Some(0), DotKind::Hollow, 2)]), &p).unwrap();
    assert_eq!((hollow.f.clone(), hollow.h.clone()), (x.scale(&f.int(2)), f.int(-2)));
    let solid = v.twist_of(&g(vec![dot(Some(0), DotKind::Solid, 1)]), &p).unwrap();
    assert_eq!((solid.f.clone(), solid.h.clone()), (e1.sub(&x), f.int(-2)));
    let floating = v.twist_of(&g(vec![dot(None, DotKind::Solid, 1)]), &p).unwrap();
    assert_eq!((floating.f.clone(), floating.h.clone()), (e1.clone(), f.int(-3)));
    assert!(v.twist_of(&g(vec![dot(None, DotKind::Hollow, 5)]), &p).unwrap().f.is_zero());
    for t in [&hollow_twist(&v, &p), &floating] {
        assert!(check_flat(t, &v));
    }
}

fn hollow_twist(v: &WebSpace, p: &Params) -> sl2kr::tqft::Twist {
    v.twist_of(&GreenDottedWeb::new(Web::circle(1), vec![dot(Some(0), DotKind::Hollow, 1)]), p).unwrap()
}

#[test]
fn dotted_foams_commute_with_the_action() {
    use Shape::*;
    let f = q();
    for n in [2usize, 3] {
        for p in params(n) {
            let words = vec![
                // the identity between differently dotted webs
                start(&[Circle(1)]).with_target_dots(vec![dot(Some(0), DotKind::Solid, 1), dot(None, DotKind::Solid, -1)]),
                {
                    let mut w = start(&[Circle(1)]).then(FoamKind::Saddle, &[0]).unwrap();
                    w.source.dots = vec![dot(Some(0), DotKind::Hollow, 3)];
                    w.with_target_dots(vec![dot(Some(1), DotKind::Hollow, 3), dot(None, DotKind::Solid, 1)])
                },
                {
                    let mut w = dotted(start(&[Theta]).then(FoamKind::Unzip, &[0]).unwrap(), &p);
                    w.source.dots.extend([dot(Some(2), DotKind::Solid, 1), dot(Some(0), DotKind::Hollow, -2)]);
                    w.with_target_dots(vec![dot(Some(0), DotKind::Hollow, 1)])
                },
                start(&[Circle(1)])
                    .decorate(Decoration::new(Some(0), 0, 1, Poly::var(0, &f).mul(&Poly::var(1, &f))))
                    .unwrap()
                    .then(FoamKind::Cap, &[0])
                    .unwrap(),
            ];
            for w in &words {
                for g in Sl2::ALL {
                    assert!(action_defect(g, w, &p).unwrap().is_zero(), "{g:?} N={n}: {w:?}");
                }
            }
        }
    }
}

#[test]
fn dumbbell_dots_are_forced() {
    for n in [2usize, 3] {
        for p in params(n) {
            for (name, w) in catalog() {
                let slots: Vec<DotSlot> = [(false, &w.source), (true, &w.target)]
                    .into_iter()
                    .flat_map(|(at_target, g)| {
                        (0..g.web.component_count())
                            .filter(|&c| g.web.shape(c).unwrap() == Shape::Theta)
                            .flat_map(|c| g.web.component_edges(c)[..2].to_vec())
                            .map(move |edge| DotSlot { at_target, edge, kind: DotKind::Hollow })
                            .collect::<Vec<_>>()
                    })
                    .collect();
                if slots.is_empty() {
                    continue;
                }
                let (m, free) = solve_dots(&w, &slots, &p).unwrap();
                assert_eq!(free, 0, "{name}");
                // t_i where the foam opens a digon, -t̄_i where it closes one
                let want = match name {
                    "digon cup" | "unzip" => vec![p.t1.clone(), p.t2.clone()],
                    _ => vec![p.t1_bar().neg(), p.t2_bar().neg()],
                };
                assert_eq!(m, want, "{name} N={n}");
                let mut w = w;
                for (s, m) in slots.iter().zip(m) {
                    let d = GreenDot { edge: Some(s.edge), kind: s.kind, mult: m };
                    if s.at_target { w.target.dots.push(d) } else { w.source.dots.push(d) }
                }
                for g in Sl2::ALL {
                    assert!(commutator(g, &w, &p).unwrap().is_zero(), "{name} {g:?}");
                }
            }
        }
    }
}

#[test]
fn wrong_twist_is_detected() {
    let ps = params(3);
    let w = start(&[Shape::Circle(2)]).then(FoamKind::DigonCup, &[0]).unwrap();
    assert!(!commutator(Sl2::F, &w, &ps[0]).unwrap().is_zero());
    let with = |p: &Params| {
        let e = |k: usize, m: &sl2kr::ring::Scalar| GreenDot { edge: Some(k), kind: DotKind::Hollow, mult: m.clone() };
        w.clone().with_target_dots(vec![e(0, &p.t1), e(1, &p.t2)])
    };
    assert!(commutator(Sl2::F, &with(&ps[0]), &ps[0]).unwrap().is_zero());
    assert!(!commutator(Sl2::F, &with(&ps[1]), &ps[0]).unwrap().is_zero());
}

#[test]
fn unsupported_slices_are_reported() {
    let w = start(&[Shape::Circle(2)]).then(FoamKind::Saddle, &[0]).unwrap();
    assert!(foam_matrix(&w, 3, q()).is_err());
    assert!(WebSpace::new(&Web::circle(3), 4, q()).is_err());
}
