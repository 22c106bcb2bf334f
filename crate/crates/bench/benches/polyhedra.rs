use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use qslice::polyhedra::{fm_is_bounded, fm_is_feasible, lattice_points, simplex_is_bounded, simplex_is_feasible};
use qslice::{build_reduced, Arrangement, Rational, SignVector};
use qslice_bench::random_systems;

fn engines(c: &mut Criterion) {
    let systems = random_systems(77, 50, 6, 12);
    let mut g = c.benchmark_group("random systems (50, <= 6 vars, <= 12 rows)");
    g.bench_function("fm feasibility", |b| {
        b.iter(|| systems.iter().filter(|p| fm_is_feasible(p)).count())
    });
    g.bench_function("simplex feasibility", |b| {
        b.iter(|| systems.iter().filter(|p| simplex_is_feasible(p)).count())
    });
    g.bench_function("fm boundedness", |b| {
        b.iter(|| systems.iter().filter(|p| fm_is_bounded(p)).count())
    });
    g.bench_function("simplex boundedness", |b| {
        b.iter(|| systems.iter().filter(|p| simplex_is_bounded(p)).count())
    });
    g.finish();
}

fn lattice(c: &mut Criterion) {
    // One bounded chamber of the n = 4 arrangement, well above the threshold.
    let arr = build_reduced(4, 3, 2, Rational::from(12)).expect("valid parameters");
    let idx = (0..1u64 << arr.sign_variables().len())
        .find(|&i| {
            let s = SignVector::from_index(arr.sign_variables(), i);
            let p = arr.working_polyhedron(s.signs()).expect("polyhedron");
            simplex_is_feasible(&p) && simplex_is_bounded(&p)
        })
        .expect("a bounded chamber");
    let p = arr
        .working_polyhedron(SignVector::from_index(arr.sign_variables(), idx).signs())
        .expect("polyhedron");
    c.bench_function("lattice points of one n=4 chamber", |b| {
        b.iter_batched(|| p.clone(), |p| lattice_points(&p).expect("bounded").len(), BatchSize::SmallInput)
    });
}

criterion_group!(benches, engines, lattice);
criterion_main!(benches);
