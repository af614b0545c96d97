//! Simulation of two three-level atoms crossing an optical cavity mode and a
//! laser beam in opposite directions.
//!
//! The crate is organised bottom-up:
//!
//! - [`model`]: geometry, pulse synthesis from atom trajectories, and the
//!   effective (5-state) and full (18-state) Hamiltonians.
//! - [`dynamics`]: fixed-step RK4 integration of the Schrödinger equation with
//!   a step-halving convergence check, plus non-Hermitian loss terms.
//! - [`analysis`]: dark state, mixing angle, adiabaticity, fidelity,
//!   concurrence, loss exposure and instantaneous spectra.
//! - [`sweep`]: parallel `(z0, d)` scans, operating-point search and 1-D
//!   robustness scans.
//! - [`config`], [`output`] and [`scenario`]: the run configuration format,
//!   delimited-text writers and the scenario driver used by the CLI.

pub mod analysis;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod model;
pub mod output;
pub mod scenario;
pub mod sweep;
pub mod units;

pub use num_complex::Complex64 as C64;

pub use analysis::{
    adiabaticity_check, concurrence, dark_state, eigen_gap_trace, exposure_metrics,
    mixing_angle, realized_mixing_angle, target_fidelity, AdiabaticityReport, DarkStateReport,
    ExposureMetrics, MixingAngle,
};
pub use config::{parse_config, parse_config_with_overrides, InitialState, RunConfig, Scenario};
pub use dynamics::{
    populations, propagate, propagate_full, with_losses, IntegratorOptions, SimulationTrace,
    StateVector, StepControl,
};
pub use error::{AnalysisError, ConfigError, Error, IntegrationError, SweepError};
pub use model::{
    atom_position, cavity_coupling, effective_hamiltonian, four_photon_detuning,
    full_hamiltonian, laser_coupling, optical_phase, pulses_at, Atom, Basis, EffectiveModel,
    Frame, FullModel, GeometryParams, Level, PhysicalParams, PulseSchedule, PulseSnapshot,
    StateLabel,
};
pub use sweep::{
    find_operating_point, robustness_scan, run_cell, scan, scan2d, Axis, CellOutcome, Metric,
    OperatingPoint, RobustParameter, RobustnessScan, ScanResult, ScanSettings, SweepGrid,
};
pub use scenario::{run_scenario, ScenarioOutcome};
