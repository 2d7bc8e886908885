use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use toric_bench::corpus;
use toric_core::families::Family;
use toric_core::hochster::moment_angle_poincare;
use toric_core::massey::{find_triple, massey_product, q_classes, Strategy};
use toric_core::poly_ring::series::{series_verify, Identity};
use toric_core::poly_ring::Registry;
use toric_core::tor_algebra::Dga;
use toric_core::{FieldSpec, PrimeField, Rationals};

fn poincare(c: &mut Criterion) {
    let mut g = c.benchmark_group("poincare");
    g.sample_size(10);
    for (name, k) in corpus(&[(Family::Q, 3), (Family::Permutohedron, 3), (Family::PMas, 4)]) {
        g.bench_with_input(BenchmarkId::from_parameter(name), &k, |b, k| {
            b.iter(|| moment_angle_poincare(k, FieldSpec::Rational, 20).unwrap())
        });
    }
    g.finish();
}

fn canonical_form(c: &mut Criterion) {
    let mut g = c.benchmark_group("canonical_form");
    for (name, k) in corpus(&[(Family::Associahedron, 4), (Family::Permutohedron, 3), (Family::Q, 4)]) {
        g.bench_with_input(BenchmarkId::from_parameter(name), &k, |b, k| b.iter(|| k.canonical_form()));
    }
    g.finish();
}

fn massey(c: &mut Criterion) {
    let mut g = c.benchmark_group("massey");
    g.sample_size(10);
    let q3 = Family::Q.complex(3).unwrap();
    g.bench_function("q^3 exhaustive", |b| {
        b.iter(|| {
            let dga = Dga::new(&q3, PrimeField::new(2).unwrap());
            let a = q_classes(&dga, 3).unwrap();
            massey_product(&dga, &a, Strategy::ExhaustiveGf2, 16).unwrap()
        })
    });
    let q4 = Family::Q.complex(4).unwrap();
    g.bench_function("q^4 vanishing", |b| {
        b.iter(|| {
            let dga = Dga::new(&q4, Rationals);
            let a = q_classes(&dga, 4).unwrap();
            massey_product(&dga, &a, Strategy::Vanishing, 16).unwrap()
        })
    });
    let as3 = Family::Associahedron.complex(3).unwrap();
    g.bench_function("as^3 triple search", |b| {
        b.iter(|| {
            let dga = Dga::new(&as3, PrimeField::new(2).unwrap());
            find_triple(&dga, Strategy::ExhaustiveGf2, 16, 3).unwrap()
        })
    });
    g.finish();
}

fn ring(c: &mut Criterion) {
    let mut g = c.benchmark_group("ring");
    g.sample_size(10);
    for n in [3, 4, 5] {
        g.bench_with_input(BenchmarkId::new("boundary pmas", n), &n, |b, &n| {
            b.iter(|| {
                let reg = Registry::new();
                reg.boundary(&reg.family_element(Family::PMas, n).unwrap())
            })
        });
    }
    g.bench_function("series dqPMas order 4", |b| {
        b.iter(|| series_verify(&Registry::new(), "dqPMas".parse::<Identity>().unwrap(), 4).unwrap())
    });
    g.finish();
}

criterion_group!(benches, poincare, canonical_form, massey, ring);
criterion_main!(benches);
