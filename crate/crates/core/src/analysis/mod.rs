//! Adiabatic-passage diagnostics.

mod adiabatic;
mod dark;
mod entanglement;
mod exposure;
mod spectrum;

pub use adiabatic::{
    adiabaticity_check, mixing_angle, AdiabaticityReport, MixingAngle, ADIABATICITY_THRESHOLD,
    MIXING_DRIFT_LIMIT,
};
pub use dark::{annotate_dark_overlap, dark_overlap, dark_state, DarkStateReport};
pub use entanglement::{
    concurrence, realized_mixing_angle, target_fidelity, CONCURRENCE_MIN_WEIGHT,
};
pub use exposure::{exposure_metrics, ExposureMetrics};
pub use spectrum::eigen_gap_trace;
