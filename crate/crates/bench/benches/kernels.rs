use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use lambda_adic::eisenstein::lambda_eis;
use lambda_adic::iwasawa::{fitting_ideal, weierstrass_prepare, PresentedModule};
use lambda_adic::padic_lfun::{kl_series, Stickelberger};
use lambda_adic::residues::verify_res_identity;
use lambda_adic::{DirichletCharacter, LambdaSeries, OkRing};

fn stickelberger(c: &mut Criterion) {
    let chi = DirichletCharacter::quadratic(-4).unwrap().mul(&DirichletCharacter::omega_pow(5, 1));
    let ring = DirichletCharacter::ring_for(5, &[&chi]);
    c.bench_function("stickelberger p=5 f=20 n=6", |b| b.iter(|| Stickelberger::build(black_box(&chi), &ring, 6).unwrap()));
    let om = DirichletCharacter::omega_pow(7, 2);
    let r7 = DirichletCharacter::ring_for(7, &[&om]);
    let mut g = c.benchmark_group("kl_series");
    g.sample_size(10);
    g.bench_function("p=7 (6, 4)", |b| b.iter(|| kl_series(black_box(&om), &r7, 6, 4).unwrap()));
    g.finish();
}

fn eisenstein(c: &mut Criterion) {
    let theta = DirichletCharacter::quadratic(-3).unwrap().mul(&DirichletCharacter::omega_pow(5, 2));
    let psi = DirichletCharacter::quadratic(-4).unwrap();
    let ring = DirichletCharacter::ring_for(5, &[&theta, &psi]);
    c.bench_function("lambda_eis q^200", |b| {
        b.iter(|| lambda_eis(black_box(&theta), &psi, 1, 12, &ring, 200, 6, 4).unwrap())
    });
    let mut g = c.benchmark_group("residues");
    g.sample_size(10);
    g.bench_function("verify primitive level 12", |b| {
        b.iter(|| verify_res_identity(black_box(&theta), &psi, 1, 12, 5, 6, 4).unwrap())
    });
    g.finish();
}

fn iwasawa(c: &mut Criterion) {
    let ring = OkRing::get(5, 4);
    let f = LambdaSeries::from_i64s(&ring, &[25, 10, 5, 1, 7, 3, 2, 1], 10, 8);
    c.bench_function("weierstrass deg 8", |b| b.iter(|| weierstrass_prepare(black_box(&f)).unwrap()));
    let s = |cs: &[i64]| LambdaSeries::from_i64s(&ring, cs, 8, 6);
    let rel = vec![
        vec![s(&[5, 1]), s(&[1]), s(&[0, 2])],
        vec![s(&[0]), s(&[25, 0, 1]), s(&[3])],
        vec![s(&[1, 1]), s(&[0, 5]), s(&[5, 0, 0, 1])],
    ];
    let m = PresentedModule::new(3, rel).unwrap();
    c.bench_function("fitting 3x3", |b| b.iter(|| fitting_ideal(black_box(&m)).unwrap()));
}

criterion_group!(benches, stickelberger, eisenstein, iwasawa);
criterion_main!(benches);
