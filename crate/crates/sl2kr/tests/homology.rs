use sl2kr::complex::{Cube, CubeOptions, LinkDiagram};
use sl2kr::homology::{Homology, Kind, Op, Relation};
use sl2kr::ring::{Field, Sl2};
use smallvec::smallvec;

fn homology(d: &LinkDiagram) -> Homology {
    let c = Cube::new(d, &CubeOptions::new(2, Field::Rationals)).unwrap().chain();
    Homology::with_default_window(&c)
}

fn hopf() -> LinkDiagram {
    LinkDiagram::from_braid(2, &[1, 1]).unwrap()
}

#[test]
fn unknot_dimensions_and_weights() {
    let h = homology(&LinkDiagram::unlink(1));
    let (lo, hi) = h.window.certified();
    assert!(hi >= 21);
    for q in lo..=hi {
        // coefficient of q^{-1}/(1-q^2)^2
        let want = if q >= -1 && (q + 1) % 2 == 0 { ((q + 1) / 2 + 1) as usize } else { 0 };
        assert_eq!(h.dim(0, q), want, "q = {q}");
    }
    for row in h.weight_table().unwrap() {
        assert_eq!(row.weight, Field::Rationals.int(-row.q));
    }
    let highest: Vec<(i64, usize)> = h.highest_weight_vectors().iter().map(|(_, q, v)| (*q, v.len())).collect();
    assert!(highest.iter().all(|&(_, k)| k == 1));
    assert_eq!(highest[0].0, -1);
    assert_eq!(highest[1].0, 1);
}

#[test]
fn unknot_decomposition() {
    let r = homology(&LinkDiagram::unlink(1)).decompose().unwrap();
    let s = r.summary(0);
    assert_eq!(s.get(&(Kind::Projective, -3)), Some(&1));
    assert_eq!(s.get(&(Kind::Verma, -1)), Some(&1));
    assert_eq!(s.get(&(Kind::Verma, -3)), None);
    for l in (5..=21).step_by(2) {
        assert_eq!(s.get(&(Kind::Verma, -l)), Some(&1), "M(-{l})");
    }
    assert!(s.keys().all(|(k, _)| matches!(k, Kind::Projective | Kind::Verma)));
    assert!(r.gamma.is_empty() && r.zeta.is_empty());
}

#[test]
fn hopf_decomposition_and_locally_finite_part() {
    let r = homology(&hopf()).decompose().unwrap();
    let s0 = r.summary(0);
    assert!(s0.iter().all(|((k, l), m)| *k == Kind::Verma && l % 2 == 0 && *l < 0 && *m == 1));
    assert!(s0.contains_key(&(Kind::Verma, -2)) && s0.contains_key(&(Kind::Verma, -20)));
    let s2 = r.summary(2);
    assert_eq!(s2.get(&(Kind::DualVerma, 2)), Some(&1));
    assert_eq!(s2.get(&(Kind::DualVerma, 0)), Some(&1));
    assert_eq!(s2.get(&(Kind::Verma, -2)), Some(&1));
    assert!(s2.keys().all(|(k, l)| *k != Kind::Verma || *l < 0));
    let g: Vec<(i64, Kind, i64, usize)> =
        r.gamma.iter().map(|c| (c.t, c.kind, c.lambda.as_rat().unwrap().to_i64().unwrap(), c.mult)).collect();
    assert_eq!(g, vec![(2, Kind::Simple, 2, 1), (2, Kind::Simple, 0, 1)]);
    assert!(r.zeta.is_empty());
}

#[test]
fn hopf_action_table_is_realized() {
    let h = homology(&hopf());
    let f = Field::Rationals;
    let c = |n: i64| f.int(n);
    let gens = |t: i64| -> i64 { h.dims().keys().filter(|k| k.0 == t).map(|k| k.1).min().unwrap() };
    let (qa, qb) = (gens(0), gens(2));
    let alpha = [
        Relation::new(Op::G(Sl2::F), 0, vec![(c(1), smallvec![1], 0)]),
        Relation::new(Op::G(Sl2::F), 1, vec![(c(1), smallvec![0, 1], 0), (c(2), smallvec![1], 1)]),
        Relation::new(Op::G(Sl2::E), 0, vec![]),
        Relation::new(Op::G(Sl2::E), 1, vec![(c(1), smallvec![], 0)]),
    ];
    let a = h.realize(0, &[qa, qa + 2], &alpha).expect("α basis");
    let beta = [
        Relation::new(Op::G(Sl2::F), 0, vec![(c(-1), smallvec![1], 0)]),
        Relation::new(Op::G(Sl2::F), 1, vec![(c(-2), smallvec![0, 1], 0)]),
        Relation::new(Op::G(Sl2::E), 0, vec![]),
        Relation::new(Op::G(Sl2::E), 1, vec![(c(-2), smallvec![], 0)]),
    ];
    let b = h.realize(2, &[qb, qb + 2], &beta).expect("β basis");
    let w = |t: i64, q: i64| h.weight(t, q).unwrap().unwrap();
    assert_eq!([w(0, a.qs[0]), w(0, a.qs[1]), w(2, b.qs[0]), w(2, b.qs[1])], [c(-2), c(-4), c(2), c(0)]);
    // a wrong table has no solution
    let wrong = [Relation::new(Op::G(Sl2::F), 0, vec![(c(1), smallvec![1], 0)])];
    assert!(h.realize(2, &[qb, qb + 2], &wrong).is_none());
}

#[test]
fn homology_sl2_relations_and_weight_law() {
    for w in [vec![1, 1], vec![1, 1, 1], vec![-1, -1, -1], vec![1, -1], vec![-1, -1]] {
        let d = LinkDiagram::from_braid(2, &w).unwrap();
        let cube = Cube::new(&d, &CubeOptions::new(2, Field::Rationals)).unwrap();
        let chain = cube.chain();
        let h = Homology::with_default_window(&chain);
        h.check_sl2_relations().unwrap();
        // the framing correction cancels self-crossings; linking leaves -2(N-1) per unit
        let c = chain.h_offset().unwrap();
        assert_eq!(c, Field::Rationals.int(-2 * d.linking()));
        for row in h.weight_table().unwrap() {
            assert_eq!(row.weight, Field::Rationals.int(-row.q).add(&c), "{w:?} {row:?}");
        }
    }
}

#[test]
fn simplified_and_full_homology_agree() {
    for w in [vec![1i32, 1], vec![1, 1, 1], vec![1, -2, 1, -2]] {
        let strands = if w.iter().any(|&g| g.abs() == 2) { 3 } else { 2 };
        let d = LinkDiagram::from_braid(strands, &w).unwrap();
        let c = Cube::new(&d, &CubeOptions::new(2, Field::Rationals)).unwrap().chain();
        let full = Homology::with_default_window(&c);
        let s = c.simplify();
        let small = Homology::new(&s.complex, full.window);
        assert_eq!(full.certified_dims(), small.certified_dims(), "{w:?}");
        assert!(s.complex.total_rank() <= c.total_rank());
    }
}

#[test]
fn empty_and_zero_modules() {
    let h = homology(&LinkDiagram::empty());
    assert_eq!(h.dim(0, 0), 1);
    let two = homology(&LinkDiagram::unlink(2));
    assert!(two.decompose().is_ok());
}
