use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use grpoly_bench::{companion, dense_matrix, group};
use grpoly_core::abelian::{lemma32_word, smith_normal_form, FgAbelianGroup, FiniteAutomorphism, IntMatrix};
use grpoly_core::group::{polycyclic_sequence, structure_report};
use grpoly_core::polyfun::{build_polyfun_group, PolyFunOptions, Strategy};
use grpoly_core::verifiers::{laws_agree, omega_bounded, OmegaBounds};

fn snf(c: &mut Criterion) {
    let mut g = c.benchmark_group("smith_normal_form");
    for n in [4, 8, 16] {
        let m = dense_matrix(n, n + 2);
        g.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| smith_normal_form(black_box(m))));
    }
    g.finish();
}

fn annihilator(c: &mut Criterion) {
    let mut g = c.benchmark_group("annihilator");
    for n in [2, 4, 6] {
        let free = FgAbelianGroup::free(n);
        let auto = free.check_automorphism(companion(n)).unwrap();
        g.bench_function(BenchmarkId::new("free", n), |b| b.iter(|| auto.annihilator().unwrap()));
    }
    let torsion = FgAbelianGroup::from_moduli(&[4, 12]);
    let auto = torsion
        .check_automorphism(IntMatrix::from_rows(&[vec![1i64, 1], vec![0, 1]]).unwrap())
        .unwrap();
    g.bench_function("torsion_4_12", |b| b.iter(|| auto.annihilator().unwrap()));
    g.finish();
}

fn polyfun(c: &mut Criterion) {
    let mut g = c.benchmark_group("polyfun_build");
    g.sample_size(10);
    let opts = PolyFunOptions::default();
    for (name, n, strategy) in [
        ("S3", 1, Strategy::Naive),
        ("S3", 1, Strategy::Chain),
        ("D4", 1, Strategy::Naive),
        ("D4", 1, Strategy::Chain),
        ("A4", 1, Strategy::Chain),
        ("S3", 2, Strategy::Chain),
    ] {
        let grp = group(name);
        let id = format!("{name}/n{n}/{strategy:?}");
        g.bench_function(id, |b| b.iter(|| build_polyfun_group(&grp, n, strategy, opts).unwrap()));
    }
    g.finish();
}

fn structure(c: &mut Criterion) {
    let mut g = c.benchmark_group("structure");
    for name in ["S4", "A5"] {
        let grp = group(name);
        g.bench_function(BenchmarkId::new("series", name), |b| b.iter(|| structure_report(&grp)));
    }
    let s4 = group("S4");
    g.bench_function("polycyclic_sequence/S4", |b| b.iter(|| polycyclic_sequence(&s4).unwrap()));
    g.finish();
}

fn verifiers(c: &mut Criterion) {
    let mut g = c.benchmark_group("verifiers");
    g.sample_size(10);
    let s3 = group("S3");
    g.bench_function("laws_agree/S3/len4", |b| {
        b.iter(|| laws_agree(&s3, 1, 4, 2, PolyFunOptions::default()).unwrap())
    });
    let q8 = group("Q8");
    g.bench_function("omega_bounded/Q8", |b| {
        b.iter(|| omega_bounded(&q8, 1, 2, OmegaBounds::default()).unwrap())
    });
    let a4 = group("A4");
    let phi = FiniteAutomorphism::inner(&a4, 1).unwrap();
    g.bench_function("lemma32_word/A4", |b| b.iter(|| lemma32_word(&phi).unwrap()));
    g.finish();
}

criterion_group!(benches, snf, annihilator, polyfun, structure, verifiers);
criterion_main!(benches);
