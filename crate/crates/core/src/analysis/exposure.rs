use serde::Serialize;

use crate::dynamics::SimulationTrace;
use crate::model::PhysicalParams;

/// First-order loss probabilities from transient decaying populations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExposureMetrics {
    /// `Γ ∫ (excited-atom count weighted population) dt`.
    pub excited: f64,
    /// `κ ∫ (photon-number weighted population) dt`.
    pub photon: f64,
}

impl ExposureMetrics {
    pub fn total(&self) -> f64 {
        self.excited + self.photon
    }
}

fn trapezoid(times: &[f64], f: impl Fn(usize) -> f64) -> f64 {
    times
        .windows(2)
        .enumerate()
        .map(|(k, w)| 0.5 * (w[1] - w[0]) * (f(k) + f(k + 1)))
        .sum()
}

pub fn exposure_metrics(trace: &SimulationTrace, p: &PhysicalParams) -> ExposureMetrics {
    let labels = trace.basis.labels();
    let weighted = |weight: &dyn Fn(usize) -> f64| {
        trapezoid(&trace.times, |k| {
            (0..labels.len()).map(|i| weight(i) * trace.populations[i][k]).sum()
        })
    };
    let excited = if p.gamma == 0.0 {
        0.0
    } else {
        p.gamma * weighted(&|i| labels[i].excited_atoms() as f64)
    };
    let photon = if p.kappa == 0.0 {
        0.0
    } else {
        p.kappa * weighted(&|i| labels[i].photons as f64)
    };
    ExposureMetrics { excited, photon }
}
