use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use deuring_bench::{context, sieve};
use deuring_core::analytic::{fg_coefficient_identity, l_eval, mollified_sum, zeta, ComplexInterval, EvalParams};
use deuring_core::bounds::repulsion_bound;
use deuring_core::rigor::{registered_form, verify_certificate, QuadParams};
use deuring_core::{enumerate_characters, HypothesisParams, Interval, SieveSystem};

fn interval_ops(c: &mut Criterion) {
    let x = Interval::from_fraction(1, 3);
    let y = Interval::from_decimal("2.97655").unwrap();
    c.bench_function("interval/mul_add_div", |b| b.iter(|| black_box(x) * black_box(y) + x / y));
    c.bench_function("interval/exp_ln", |b| b.iter(|| (black_box(y).ln() * x).exp()));
}

fn characters(c: &mut Criterion) {
    c.bench_function("chars/enumerate_840", |b| b.iter(|| enumerate_characters(black_box(840)).unwrap()));
}

fn sieve_weights(c: &mut Criterion) {
    let mut g = c.benchmark_group("sieve/build");
    for r in [200u64, 2000] {
        let ctx = context(60);
        g.bench_with_input(BenchmarkId::from_parameter(r), &r, |b, &r| {
            b.iter(|| SieveSystem::build(ctx.clone(), r).unwrap())
        });
    }
    g.finish();
}

fn analytic(c: &mut Criterion) {
    let p = EvalParams::default();
    let s = ComplexInterval::point(0.5, 14.0);
    c.bench_function("analytic/zeta_half_line", |b| b.iter(|| zeta(black_box(s), &p).unwrap()));
    let chi = enumerate_characters(12).unwrap().remove(1);
    c.bench_function("analytic/l_mod_12", |b| b.iter(|| l_eval(black_box(s), &chi, &p).unwrap()));

    let sys = sieve(5, 50);
    let chi5 = enumerate_characters(5).unwrap().remove(1);
    c.bench_function("analytic/fg_identity_5000", |b| {
        b.iter(|| fg_coefficient_identity(&sys, &chi5, 5000).unwrap())
    });
    let rho = ComplexInterval::point(0.8, 3.0);
    c.bench_function("analytic/mollified_sum_10000", |b| {
        b.iter(|| mollified_sum(10_000, black_box(rho), &chi5, &sys).unwrap())
    });
}

fn rigor(c: &mut Criterion) {
    let (form, domain) = registered_form("int_4_5").unwrap();
    c.bench_function("rigor/quadrature_int_4_5", |b| {
        b.iter(|| {
            deuring_core::rigor::integrate_rigorous(&form, domain, form.decay(), &QuadParams::default()).unwrap()
        })
    });
    c.bench_function("rigor/certificate_B1_product", |b| b.iter(|| verify_certificate("B1_product", 80).unwrap()));
}

fn bounds(c: &mut Criterion) {
    let params = HypothesisParams::from_presets("convexity,bordignon").unwrap();
    let beta1 = Interval::from_decimal("0.999").unwrap();
    c.bench_function("bounds/repulsion", |b| {
        b.iter(|| repulsion_bound(black_box(1_000_000), 10.0, beta1, &params).unwrap())
    });
}

criterion_group! {
    name = kernels;
    config = Criterion::default().sample_size(10);
    targets = interval_ops, characters, sieve_weights, analytic, rigor, bounds
}
criterion_main!(kernels);
