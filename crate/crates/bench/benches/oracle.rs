use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_rational::BigRational;
use rand::Rng;

use sl2char::charalg::reduce_heuristic;
use sl2char::gen;
use sl2char::suite::{check_schema_expr, schema_instance};
use sl2char::tracealg::{verify_tau_chi, SchemaId};
use sl2char::{CharAlgebra, CharPoly, OracleConfig, PrimeField, Rationals};

fn sample_poly(alg: &CharAlgebra, seed: u64, terms: usize, degree: usize) -> CharPoly {
    let mut rng = OracleConfig::new(1, seed).rng(0);
    (0..terms).fold(CharPoly::zero(), |acc, _| {
        let d = rng.gen_range(1..=degree);
        let m = gen::monomial(&mut rng, alg, d, 4);
        acc.add(&CharPoly::term(m, BigRational::from_integer(rng.gen_range(1..=9).into())))
    })
}

fn oracle_equality(c: &mut Criterion) {
    let alg = CharAlgebra::free(2, 2);
    let f = sample_poly(&alg, 1, 6, 3);
    let h = reduce_heuristic(&alg, &f);
    let cfg = OracleConfig::new(16, 1);
    let mut g = c.benchmark_group("oracle_equality");
    g.bench_function("fp", |b| {
        let field = PrimeField::default();
        b.iter(|| alg.equal(&f, &h, &field, &[], &cfg).unwrap())
    });
    g.bench_function("q", |b| {
        let field = Rationals::default();
        b.iter(|| alg.equal(&f, &h, &field, &[], &cfg).unwrap())
    });
    g.finish();
}

fn tau_chi(c: &mut Criterion) {
    let alg = CharAlgebra::free(2, 2);
    let mut g = c.benchmark_group("tau_chi_certificate");
    for degree in [1, 2, 3] {
        let f = sample_poly(&alg, 2, 1, degree);
        g.bench_with_input(BenchmarkId::from_parameter(degree), &f, |b, f| b.iter(|| verify_tau_chi(&alg, f)));
    }
    g.finish();
}

fn schemas(c: &mut Criterion) {
    let field = PrimeField::default();
    let cfg = OracleConfig::new(16, 3);
    let mut g = c.benchmark_group("schema_check");
    for id in [SchemaId::G, SchemaId::Con2, SchemaId::Plucker] {
        let mut rng = cfg.rng(0);
        let inst = schema_instance(id, &mut rng, 2, 2, 3).unwrap();
        let expr = inst.sum();
        let (m, n) = expr.arity();
        g.bench_function(id.name(), |b| b.iter(|| check_schema_expr(&field, &expr, m, n, &cfg).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, oracle_equality, tau_chi, schemas);
criterion_main!(benches);
