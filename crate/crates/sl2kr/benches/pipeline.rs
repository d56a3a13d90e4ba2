use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use sl2kr::complex::{Cube, CubeOptions, LinkDiagram};
use sl2kr::exec;
use sl2kr::homology::Homology;
use sl2kr::ring::Field;

fn diagrams() -> Vec<(&'static str, LinkDiagram)> {
    vec![
        ("trefoil", LinkDiagram::from_braid(2, &[1, 1, 1]).unwrap()),
        ("figure-eight", LinkDiagram::from_braid(3, &[1, -2, 1, -2]).unwrap()),
        ("5_1", LinkDiagram::from_braid(2, &[1, 1, 1, 1, 1]).unwrap()),
    ]
}

fn cube_and_homology(c: &mut Criterion) {
    let opts = CubeOptions::new(2, Field::Rationals);
    for (stage, run) in [
        ("cube", (|d: &LinkDiagram, o: &CubeOptions| drop(Cube::new(d, o).unwrap().chain())) as fn(&LinkDiagram, &CubeOptions)),
        ("homology", |d, o| {
            let c = Cube::new(d, o).unwrap().chain();
            drop(Homology::with_default_window(&c));
        }),
    ] {
        let mut g = c.benchmark_group(stage);
        g.sample_size(10);
        for (name, d) in diagrams() {
            for parallel in [true, false] {
                let id = BenchmarkId::new(if parallel { "parallel" } else { "sequential" }, name);
                g.bench_with_input(id, &d, |b, d| {
                    exec::set_parallel(parallel);
                    b.iter(|| run(d, &opts));
                });
            }
        }
        g.finish();
    }
    exec::set_parallel(true);
}

criterion_group!(benches, cube_and_homology);
criterion_main!(benches);
