use nalgebra::{Matrix4, Vector4};

use crate::dynamics::StateVector;
use crate::error::AnalysisError;
use crate::model::{Level, StateLabel, G1G2_0, G2G1_0};
use crate::C64;

/// Smallest two-qubit weight for which concurrence is reported.
pub const CONCURRENCE_MIN_WEIGHT: f64 = 1e-6;

/// `|⟨Φ_target|ψ⟩|²` with `Φ_target = cos ϑ |g1,g2,0⟩ + sin ϑ |g2,g1,0⟩`.
pub fn target_fidelity(psi: &StateVector, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    (psi.amplitude(G1G2_0) * c + psi.amplitude(G2G1_0) * s).norm_sqr()
}

/// Mixing angle actually reached: `atan(|c_{g2,g1,0}| / |c_{g1,g2,0}|)`.
pub fn realized_mixing_angle(psi: &StateVector) -> f64 {
    psi.amplitude(G2G1_0).norm().atan2(psi.amplitude(G1G2_0).norm())
}

const QUBIT: [Level; 2] = [Level::G1, Level::G2];

/// Wootters concurrence of the atom pair restricted to `{g1, g2}` on each
/// atom, with the cavity traced out and the result renormalized.
pub fn concurrence(psi: &StateVector) -> Result<f64, AnalysisError> {
    let mut rho = Matrix4::<C64>::zeros();
    for photons in 0..=1u8 {
        let v = Vector4::from_fn(|k, _| {
            psi.amplitude(StateLabel::new(QUBIT[k / 2], QUBIT[k % 2], photons))
        });
        rho += v * v.adjoint();
    }
    let weight = rho.trace().re;
    if weight.is_nan() || weight < CONCURRENCE_MIN_WEIGHT {
        return Err(AnalysisError::UndefinedConcurrence {
            weight,
            threshold: CONCURRENCE_MIN_WEIGHT,
        });
    }
    rho /= C64::new(weight, 0.0);
    Ok(wootters(&rho))
}

fn wootters(rho: &Matrix4<C64>) -> f64 {
    // σy⊗σy in the computational basis: anti-diagonal (-1, 1, 1, -1)
    let mut yy = Matrix4::<C64>::zeros();
    yy[(0, 3)] = C64::new(-1.0, 0.0);
    yy[(1, 2)] = C64::new(1.0, 0.0);
    yy[(2, 1)] = C64::new(1.0, 0.0);
    yy[(3, 0)] = C64::new(-1.0, 0.0);
    let flipped = yy * rho.conjugate() * yy;
    let sqrt_rho = hermitian_sqrt(rho);
    let r = sqrt_rho * flipped * sqrt_rho;
    let r = (r + r.adjoint()) * C64::new(0.5, 0.0);
    let mut lambdas: Vec<f64> = r
        .symmetric_eigenvalues()
        .iter()
        .map(|&x| x.max(0.0).sqrt())
        .collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

fn hermitian_sqrt(m: &Matrix4<C64>) -> Matrix4<C64> {
    let eig = m.symmetric_eigen();
    let roots = eig.eigenvalues.map(|x| C64::new(x.max(0.0).sqrt(), 0.0));
    let v = &eig.eigenvectors;
    v * Matrix4::from_diagonal(&roots) * v.adjoint()
}
