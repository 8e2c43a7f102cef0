use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use num_bigint::BigInt;
use torprod::catalog;
use torprod::exactalg::{smith_normal_form, CoefficientRing, Matrix};
use torprod::torcohomology::{ProductKind, TorTable};
use torprod::toricmorphism::{hat_tor_phi, ChainMaps, ToricMorphism};

fn smith(c: &mut Criterion) {
    for n in [8, 16, 24] {
        let a = Matrix::from_fn(n, n, |i, j| BigInt::from(((i * 7 + j * 13 + i * j) % 11) as i64 - 5));
        c.bench_function(&format!("smith normal form {n}x{n}"), |b| b.iter(|| smith_normal_form(black_box(&a))));
    }
}

fn tor(c: &mut Criterion) {
    let example = Arc::new(catalog::cstar2_p1());
    let rp2 = Arc::new(catalog::rp2_6());
    c.bench_function("tor example over Q", |b| {
        b.iter(|| TorTable::compute(example.clone(), CoefficientRing::Rationals, None))
    });
    c.bench_function("tor example over Z", |b| {
        b.iter(|| TorTable::compute(example.clone(), CoefficientRing::Integers, None))
    });
    c.bench_function("tor RP2 moment-angle over Z", |b| {
        b.iter(|| TorTable::compute(rp2.clone(), CoefficientRing::Integers, Some(8)))
    });
}

fn products(c: &mut Criterion) {
    let t = TorTable::compute(Arc::new(catalog::cstar2_p1()), CoefficientRing::Rationals, None);
    c.bench_function("twisted product table", |b| b.iter(|| t.product_table(ProductKind::Twisted).unwrap()));
    c.bench_function("untwisted product table", |b| b.iter(|| t.product_table(ProductKind::Untwisted).unwrap()));
}

fn induced(c: &mut Criterion) {
    let m = ToricMorphism::power_map(Arc::new(catalog::cstar2_p1()), 3);
    let maps = ChainMaps::new(m, CoefficientRing::Rationals).unwrap();
    let t = TorTable::compute(Arc::new(catalog::cstar2_p1()), CoefficientRing::Rationals, None);
    c.bench_function("hat Tor of the power map r = 3", |b| b.iter(|| hat_tor_phi(&maps, &t, &t).unwrap()));
}

criterion_group!(benches, smith, tor, products, induced);
criterion_main!(benches);
