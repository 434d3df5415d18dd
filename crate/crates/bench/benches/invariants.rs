use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use framelink::families::{diagram, FamilySpec};
use framelink::invariants::{bracket, jones};
use framelink::random::random_braid_closure;
use framelink::surgery::snf;
use framelink::Diagram;

fn jones_pa(c: &mut Criterion) {
    let mut g = c.benchmark_group("jones_pa");
    for a in [1, 3, 5, 8] {
        let d = diagram(FamilySpec::Pa(a)).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(a), &d, |b, d| b.iter(|| jones(black_box(d)).unwrap()));
    }
    g.finish();
}

fn bracket_random(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut g = c.benchmark_group("bracket_braid");
    for n in [10, 20, 30] {
        let d = random_braid_closure(&mut rng, 5, n);
        g.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| b.iter(|| bracket(black_box(d)).unwrap()));
    }
    g.finish();
}

fn cable(c: &mut Criterion) {
    let t = framelink::diagram::braid_closure(2, &[1, 1, 1]);
    c.bench_function("cable_trefoil_7_3", |b| b.iter(|| black_box(&t).cable(0, 7, 3).unwrap()));
    let u = Diagram::unlink(2);
    c.bench_function("slide_unlink_5_2", |b| {
        b.iter(|| framelink::surgery::slide_diagram(black_box(&u), 0, 1, framelink::Slope::new(5, 2).unwrap(), 1).unwrap())
    });
}

fn smith(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let m: Vec<Vec<i64>> = (0..8).map(|_| (0..8).map(|_| rng.gen_range(-9..=9)).collect()).collect();
    let m = snf::from_i64(&m);
    c.bench_function("snf_8x8", |b| b.iter(|| snf::smith_normal_form(black_box(&m))));
}

criterion_group!(benches, jones_pa, bracket_random, cable, smith);
criterion_main!(benches);
