use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use hermrep::classifier::{classify, Curvature, GroupSpec, RepData};
use hermrep::fockspace::{weyl, FockBasis};
use hermrep::kernelver::{gram_test, GramOptions, KernelFamily, ScalarCharacter};
use hermrep::weights::weight_set;
use hermrep::{IndexSet, Rational, Weight, WeylType, C64};

fn weights(c: &mut Criterion) {
    let lambda = Weight::from_ints(&[(1, 2), (2, -1)]).unwrap();
    let window = [1, 2, 3, 4];
    for t in [WeylType::A, WeylType::C, WeylType::D] {
        c.bench_function(&format!("weight_set {t:?} window 4"), |b| b.iter(|| weight_set(black_box(&lambda), t, &window).unwrap()));
    }
}

fn classifier(c: &mut Criterion) {
    let spec = GroupSpec::type_i(Curvature::Domain, IndexSet::finite(3).unwrap(), IndexSet::finite(2).unwrap());
    let rep = RepData::pair(Weight::from_ints(&[(1, 2), (2, 1)]).unwrap(), Weight::from_ints(&[(1, -1)]).unwrap(), Some(Rational::from_integer(3)));
    c.bench_function("classify I_fin(3,2)", |b| b.iter(|| classify(black_box(&spec), black_box(&rep)).unwrap()));
}

fn fock(c: &mut Criterion) {
    let basis = FockBasis::new(1, 40).unwrap();
    let v = [C64::new(0.7, -0.3)];
    c.bench_function("weyl operator m=1 N=40", |b| b.iter(|| weyl(&basis, black_box(&v)).unwrap()));
    let basis = FockBasis::new(3, 6).unwrap();
    let v = [C64::new(0.7, -0.3), C64::new(0.1, 0.2), C64::new(-0.4, 0.0)];
    c.bench_function("weyl operator m=3 N=6", |b| b.iter(|| weyl(&basis, black_box(&v)).unwrap()));
}

fn kernel(c: &mut Criterion) {
    let mut g = c.benchmark_group("gram");
    g.sample_size(10);
    let opts = GramOptions::new(40, 7, 1e-8);
    for (p, q) in [(1, 1), (2, 2)] {
        let chi = ScalarCharacter::of_charge(Rational::new(3, 2));
        g.bench_function(format!("I({p},{q}) 40 samples"), |b| b.iter(|| gram_test(KernelFamily::I { p, q }, chi, opts).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, weights, classifier, fock, kernel);
criterion_main!(benches);
