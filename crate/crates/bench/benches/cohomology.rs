use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qtwist_core::algebra::truncated_polynomial;
use qtwist_core::cohomology::qci_minimal_resolution;
use qtwist_core::{
    endomorphism_algebra, gldim, hochschild_table, qci_total_resolution, ExtEngine, Field, GradedModule, QciSpec,
    UnitDescriptor,
};

fn resolutions(c: &mut Criterion) {
    let mut g = c.benchmark_group("resolution");
    for a in [vec![2, 2], vec![2, 3, 4], vec![4, 6]] {
        let spec = QciSpec::uniform(Field::prime(5).unwrap(), a.clone(), UnitDescriptor::root(4, 1)).unwrap();
        let id = format!("{a:?}");
        g.bench_with_input(BenchmarkId::new("minimal", &id), &spec, |b, s| b.iter(|| qci_minimal_resolution(s, 6).unwrap()));
        g.bench_with_input(BenchmarkId::new("total", &id), &spec, |b, s| b.iter(|| qci_total_resolution(s, 6).unwrap()));
    }
    g.finish();
}

fn ext_table(c: &mut Criterion) {
    let k = Field::rational_functions(&["q"]).unwrap();
    let spec = QciSpec::uniform(k, vec![2, 2], UnitDescriptor::var("q")).unwrap();
    c.bench_function("ext table (2,2) generic q, trunc 6", |b| {
        b.iter(|| {
            let res = qci_minimal_resolution(&spec, 7).unwrap();
            let coeff = res.target().clone();
            ExtEngine::new(res, coeff).unwrap().table(6).unwrap()
        })
    });
}

fn hochschild(c: &mut Criterion) {
    let alg = Arc::new(truncated_polynomial(&Field::rationals(), 3).unwrap());
    c.bench_function("hh k[x]/(x^3), trunc 6", |b| b.iter(|| hochschild_table(&alg, 6, false).unwrap()));
}

fn global_dimension(c: &mut Criterion) {
    let g = Arc::new(truncated_polynomial(&Field::rationals(), 2).unwrap());
    let m = GradedModule::direct_sum(&[GradedModule::trivial(g.clone()).unwrap(), GradedModule::regular(g)]).unwrap();
    let end = endomorphism_algebra(&m).unwrap().algebra;
    c.bench_function("gldim End(k + k[x]/x^2)", |b| b.iter(|| gldim(&end, 8).unwrap()));
}

criterion_group!(benches, resolutions, ext_table, hochschild, global_dimension);
criterion_main!(benches);
