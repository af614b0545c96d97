//! Values frozen from converged runs; a change here means the physics or the
//! integrator changed.

use fstirap::model::G1G2_0;
use fstirap::{
    exposure_metrics, propagate, with_losses, Basis, EffectiveModel, GeometryParams,
    IntegratorOptions, PhysicalParams, StateVector,
};

/// `kappa = gamma = G0` on the counter-propagating transfer.
#[test]
fn strong_loss_norm_deficit() {
    let g = GeometryParams::reference_stirap();
    let p = PhysicalParams::reference_stirap();
    let lossy = p.with_losses(p.g0, p.g0);
    let opts = IntegratorOptions::for_geometry(&g, &p);
    let psi0 = StateVector::basis_state(Basis::Subspace, G1G2_0).unwrap();
    let model = with_losses(EffectiveModel::new(&g, &lossy), Basis::Subspace, &lossy);
    let tr = propagate(&model, &psi0, &opts).unwrap();
    let loss = 1.0 - tr.final_state.norm_sqr();
    assert!((loss - 0.7872).abs() < 1e-3, "loss {loss}");
    // on the damped trace the exposure integral is the norm deficit itself
    let e = exposure_metrics(&tr, &lossy);
    assert!((e.total() - loss).abs() < 1e-3 * loss, "{} vs {loss}", e.total());
}

#[test]
fn weak_loss_is_first_order() {
    let g = GeometryParams::reference_stirap();
    let p = PhysicalParams::reference_stirap();
    let lossy = p.with_losses(1e3, 1e3);
    let opts = IntegratorOptions::for_geometry(&g, &p);
    let psi0 = StateVector::basis_state(Basis::Subspace, G1G2_0).unwrap();
    let model = with_losses(EffectiveModel::new(&g, &lossy), Basis::Subspace, &lossy);
    let loss = 1.0 - propagate(&model, &psi0, &opts).unwrap().final_state.norm_sqr();
    let clean = propagate(&EffectiveModel::new(&g, &p), &psi0, &opts).unwrap();
    let e = exposure_metrics(&clean, &lossy);
    assert!((e.total() / loss - 1.0).abs() < 0.01, "{} vs {loss}", e.total());
}
