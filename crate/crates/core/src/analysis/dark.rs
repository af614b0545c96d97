use nalgebra::{DVector, Vector5};

use crate::dynamics::{SimulationTrace, StateVector};
use crate::error::AnalysisError;
use crate::model::{chain_hamiltonian, rotating_to_effective, Basis, PulseSchedule, PulseSnapshot};
use crate::C64;

/// Zero-eigenvalue eigenvector of the chain Hamiltonian.
#[derive(Debug, Clone)]
pub struct DarkStateReport {
    pub vector: StateVector,
    /// `(G1²Ω2² + Ω1²Ω2² + G2²Ω1²)^(-1/2)`.
    pub normalization: f64,
    /// `‖H·D‖` for the chain Hamiltonian with zero Doppler diagonal and the
    /// snapshot's `Δ`.
    pub residual: f64,
    /// Frobenius norm of that Hamiltonian.
    pub hamiltonian_norm: f64,
}

impl DarkStateReport {
    pub fn relative_residual(&self) -> f64 {
        if self.hamiltonian_norm == 0.0 {
            0.0
        } else {
            self.residual / self.hamiltonian_norm
        }
    }
}

/// Unnormalized components `(G1Ω2, 0, -Ω1Ω2, 0, G2Ω1)` divided by their
/// largest magnitude, and that scale.
fn scaled_components(s: &PulseSnapshot) -> Option<([f64; 5], f64)> {
    // products are quadratic in the couplings; pre-scaling keeps them representable
    let m = [s.omega1, s.g1, s.g2, s.omega2].iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if m == 0.0 || !m.is_finite() {
        return None;
    }
    let (o1, g1, g2, o2) = (s.omega1 / m, s.g1 / m, s.g2 / m, s.omega2 / m);
    let raw = [g1 * o2, 0.0, -o1 * o2, 0.0, g2 * o1];
    let scale = raw.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    if scale == 0.0 {
        return None;
    }
    Some((raw.map(|x| x / scale), scale * m * m))
}

pub fn dark_state(s: &PulseSnapshot) -> Result<DarkStateReport, AnalysisError> {
    let (unit, scale) = scaled_components(s).ok_or(AnalysisError::UndefinedDarkState)?;
    let len = unit.iter().map(|x| x * x).sum::<f64>().sqrt();
    let d = Vector5::from(unit.map(|x| x / len));
    let h = chain_hamiltonian(s, 0.0);
    let residual = (h * d).norm();
    let vector = StateVector::from_raw(
        Basis::Subspace,
        DVector::from_iterator(5, d.iter().map(|&x| C64::new(x, 0.0))),
    );
    Ok(DarkStateReport {
        vector,
        normalization: 1.0 / (scale * len),
        residual,
        hamiltonian_norm: h.norm(),
    })
}

/// `|⟨D(t)|ψ⟩|²` for a subspace-frame amplitude vector; NaN where the dark
/// state is undefined.
pub fn dark_overlap(s: &PulseSnapshot, psi: &[C64; 5]) -> f64 {
    match scaled_components(s) {
        None => f64::NAN,
        Some((unit, _)) => {
            let len = unit.iter().map(|x| x * x).sum::<f64>().sqrt();
            let amp: C64 = unit.iter().zip(psi).map(|(&d, &a)| a * (d / len)).sum();
            amp.norm_sqr()
        }
    }
}

/// Fills `trace.dark_overlap`. Full-basis traces are assumed to come from the
/// rotating frame and are mapped onto the effective frame first.
pub fn annotate_dark_overlap(trace: &mut SimulationTrace, schedule: &PulseSchedule) {
    let overlaps = trace
        .times
        .iter()
        .zip(&trace.amplitudes)
        .map(|(&t, a)| {
            let sub: [C64; 5] = match trace.basis {
                Basis::Subspace => std::array::from_fn(|i| a[i]),
                Basis::Full => rotating_to_effective(schedule.geometry(), t, a.as_slice()),
            };
            dark_overlap(&schedule.at(t), &sub)
        })
        .collect();
    trace.dark_overlap = Some(overlaps);
}
