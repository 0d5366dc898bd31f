use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use std::sync::Arc;
use toric_core::sim::{corrupt, random_message, trial_rng};
use toric_core::{build_field, DecoderPair, ExponentSource, LatticePolytope, PairOptions, ToricCode};

fn gf16_pair() -> DecoderPair {
    let field = Arc::new(build_field(2, 4, None).unwrap());
    DecoderPair::new(
        &field,
        &ExponentSource::Polytope(LatticePolytope::simplex(4)),
        &ExponentSource::Polytope(LatticePolytope::simplex(8)),
        44,
        PairOptions::default(),
    )
    .unwrap()
}

fn bench_build(c: &mut Criterion) {
    let field = Arc::new(build_field(2, 4, None).unwrap());
    c.bench_function("build_gf16_simplex12", |b| {
        b.iter(|| ToricCode::from_polytope(&field, black_box(&LatticePolytope::simplex(12))).unwrap())
    });
    c.bench_function("build_pair_gf16_4_8", |b| b.iter(gf16_pair));
}

fn bench_decode(c: &mut Criterion) {
    let pair = gf16_pair();
    let field = pair.code().field().clone();
    let mut rng = trial_rng(1, 0);
    let msg = random_message(&field, pair.code().dimension(), &mut rng);
    let cw = pair.code().encode(&msg).unwrap();
    let (y, _) = corrupt(&field, &cw, 44, &mut rng).unwrap();

    c.bench_function("kernel_matrix_rref_225x136", |b| {
        let m = pair.build_kernel_matrix(&y).unwrap();
        b.iter(|| black_box(&m).rref())
    });
    c.bench_function("decode_gf16_t44", |b| b.iter(|| pair.decode(black_box(&y)).unwrap()));
}

fn bench_distance(c: &mut Criterion) {
    let field = Arc::new(build_field(5, 1, None).unwrap());
    let code = ToricCode::from_polytope(&field, &LatticePolytope::simplex(2)).unwrap();
    c.bench_function("min_distance_gf5_simplex2", |b| {
        b.iter(|| code.min_distance_bruteforce(black_box(10_000_000)).unwrap())
    });
}

criterion_group!(benches, bench_build, bench_decode, bench_distance);
criterion_main!(benches);
