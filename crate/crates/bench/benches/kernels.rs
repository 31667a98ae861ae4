use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use mlsp::artinian::{lee_evaluation, substituted_configuration, symbolic_configuration, Artinian, AuxPoint};
use mlsp::complex::construct;
use mlsp::homology::reduced_betti;
use mlsp::lefschetz::{check_multigraded_slp, reproduce_counterexample, verify_differential_formula, LefschetzConfig};
use mlsp::{BalancedComplex, Field, FieldDescriptor, Gf2k, Gfp, Matrix};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_matrix<F: Field>(f: &F, n: usize, seed: u64) -> Matrix<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Matrix::zeros(f, n, n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, f.random(&mut rng));
        }
    }
    m
}

fn rank(c: &mut Criterion) {
    let mut g = c.benchmark_group("rank");
    for n in [16, 64, 128] {
        let f = Gf2k::new(32).unwrap();
        let m = random_matrix(&f, n, 1);
        g.bench_with_input(BenchmarkId::new("gf2k32", n), &m, |b, m| b.iter(|| f.matrix_rank(black_box(m))));
        let p = Gfp::default_prime();
        let m = random_matrix(&p, n, 1);
        g.bench_with_input(BenchmarkId::new("gfp", n), &m, |b, m| b.iter(|| p.matrix_rank(black_box(m))));
    }
    g.finish();
}

fn reduction(c: &mut Criterion) {
    let cases: [(&str, BalancedComplex); 3] = [
        ("octahedron", construct::cross_polytope(3)),
        ("join-3-3", construct::join_spheres(&[3, 3])),
        ("cross-polytope-5", construct::cross_polytope(5)),
    ];
    let mut g = c.benchmark_group("hilbert-function");
    for (name, bc) in &cases {
        let f = Gf2k::new(32).unwrap();
        g.bench_function(*name, |b| {
            b.iter(|| {
                let lsop = substituted_configuration(bc, f.clone(), 1).unwrap();
                Artinian::new(bc, &lsop).unwrap().hilbert_function().unwrap()
            })
        });
    }
    g.finish();
}

fn evaluation(c: &mut Criterion) {
    let tri = BalancedComplex::monochromatic(construct::simplex_boundary(2));
    c.bench_function("lee-evaluation/triangle-symbolic", |b| {
        b.iter(|| {
            let art = Artinian::new(&tri, &symbolic_configuration(&tri).unwrap()).unwrap();
            lee_evaluation(&art, AuxPoint::Sparse).unwrap();
        })
    });
    let oct = construct::cross_polytope(3);
    c.bench_function("differential-formula/octahedron", |b| b.iter(|| verify_differential_formula(&oct, false).unwrap()));
}

fn verifiers(c: &mut Criterion) {
    let cfg = LefschetzConfig::new(FieldDescriptor::DEFAULT, vec![1]);
    let join = construct::join_spheres(&[2, 2, 2]);
    c.bench_function("slp/join-2-2-2", |b| b.iter(|| check_multigraded_slp(&join, &cfg).unwrap()));
    let cfg = LefschetzConfig { trials: 10, ..cfg };
    c.bench_function("counterexample/1-3-5", |b| b.iter(|| reproduce_counterexample(1, 3, 5, &cfg).unwrap()));
    let rp2 = construct::rp2_six();
    let f = Gfp::new(2).unwrap();
    c.bench_function("betti/rp2", |b| b.iter(|| reduced_betti(black_box(&rp2), &f)));
}

criterion_group!(benches, rank, reduction, evaluation, verifiers);
criterion_main!(benches);
