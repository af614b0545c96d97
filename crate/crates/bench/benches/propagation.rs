use criterion::{black_box, criterion_group, criterion_main, Criterion};
use fstirap::model::G1G2_0;
use fstirap::{
    propagate, propagate_full, scan, Axis, Basis, EffectiveModel, GeometryParams,
    IntegratorOptions, PhysicalParams, ScanSettings, StateVector,
};

fn effective(c: &mut Criterion) {
    let g = GeometryParams::reference_stirap();
    let p = PhysicalParams::reference_stirap();
    let opts = IntegratorOptions::for_geometry(&g, &p);
    let psi0 = StateVector::basis_state(Basis::Subspace, G1G2_0).unwrap();
    let model = EffectiveModel::new(&g, &p);
    c.bench_function("effective_transfer", |b| {
        b.iter(|| propagate(black_box(&model), &psi0, &opts).unwrap())
    });
}

fn full(c: &mut Criterion) {
    let g = GeometryParams::reference_stirap();
    let p = PhysicalParams::reference_stirap();
    let opts = IntegratorOptions::for_geometry(&g, &p);
    let psi0 = StateVector::basis_state(Basis::Full, G1G2_0).unwrap();
    let mut group = c.benchmark_group("full");
    group.sample_size(10);
    group.bench_function("full_transfer", |b| {
        b.iter(|| propagate_full(black_box(&g), &p, &psi0, &opts).unwrap())
    });
    group.finish();
}

fn small_scan(c: &mut Criterion) {
    let g = GeometryParams::reference_half_stirap(0.0, 0.0);
    let p = PhysicalParams::reference_half_stirap();
    let settings = ScanSettings {
        integrator: IntegratorOptions::for_geometry(&g, &p),
        ..ScanSettings::default()
    };
    let mut group = c.benchmark_group("scan");
    group.sample_size(10);
    group.bench_function("scan_5x5", |b| {
        b.iter(|| {
            scan(black_box(&g), &p, Axis::new(0.0, 20e-6, 5), Axis::new(0.0, 40e-6, 5), &settings)
                .unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, effective, full, small_scan);
criterion_main!(benches);
