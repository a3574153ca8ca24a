use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use persnf_bench::torus_sweep;
use persnf_core::{barcode, graded_snd, snd, EuclideanDomain, Integers, Matrix, PolyRing, PrimeField, Rationals};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn integer_snd(c: &mut Criterion) {
    let mut group = c.benchmark_group("snd_z");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [4usize, 8, 16] {
        let data = (0..n * n).map(|_| Integers.from_i64(rng.random_range(-9..=9))).collect();
        let a = Matrix::new(n, n, data).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &a, |b, a| b.iter(|| snd(&Integers, a)));
    }
    group.finish();
}

fn graded_boundary(c: &mut Criterion) {
    let f = torus_sweep(4);
    let ring = PolyRing::new(Rationals);
    let d2 = f.graded_boundary_matrix(2, &ring);
    c.bench_function("graded_snd_torus4_d2", |b| b.iter(|| graded_snd(&ring, &d2).unwrap()));
}

fn barcodes(c: &mut Criterion) {
    let mut group = c.benchmark_group("barcode_torus");
    group.sample_size(10);
    let z2 = PrimeField::new(2).unwrap();
    for n in [3usize, 4] {
        let f = torus_sweep(n);
        group.bench_with_input(BenchmarkId::new("z2", n), &f, |b, f| b.iter(|| barcode(f, &z2, None).unwrap()));
        group.bench_with_input(BenchmarkId::new("q", n), &f, |b, f| {
            b.iter(|| barcode(f, &Rationals, None).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, integer_snd, graded_boundary, barcodes);
criterion_main!(benches);
