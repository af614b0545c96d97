//! Parallel parameter scans over the beam geometry and robustness scans.
//!
//! Every cell is an independent propagation from `|g1,g2,0⟩` under the
//! effective Hamiltonian. Cells run on the rayon pool and are assembled by
//! index, so results do not depend on scheduling or worker count.

mod grid;
mod robustness;

use std::f64::consts::FRAC_PI_4;

use serde::Serialize;

use crate::analysis::{concurrence, target_fidelity};
use crate::dynamics::{propagate, IntegratorOptions, StateVector};
use crate::error::IntegrationError;
use crate::model::{
    Basis, EffectiveModel, GeometryParams, PhysicalParams, PulseSchedule, EG2_0, G1G2_0, G2E_0,
    G2G1_0, G2G2_1, SUBSPACE_LABELS,
};

pub use grid::{find_operating_point, scan, scan2d, Axis, OperatingPoint, ScanResult, SweepGrid};
pub use robustness::{robustness_scan, RobustParameter, RobustnessScan};

/// Composite-objective weight on the intermediate-population sum.
pub const DEFAULT_OBJECTIVE_WEIGHT: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    /// `|0.5 − P(|g1,g2,0⟩)|` at the final time.
    Deviation,
    /// `P(|e,g2,0⟩) + P(|g2,g2,1⟩) + P(|g2,e,0⟩)` at the final time.
    IntermediateSum,
    Fidelity,
    Concurrence,
}

impl Metric {
    pub const ALL: [Metric; 4] =
        [Metric::Deviation, Metric::IntermediateSum, Metric::Fidelity, Metric::Concurrence];

    pub fn name(self) -> &'static str {
        match self {
            Metric::Deviation => "deviation",
            Metric::IntermediateSum => "intermediate_sum",
            Metric::Fidelity => "fidelity",
            Metric::Concurrence => "concurrence",
        }
    }

    pub fn parse(text: &str) -> Option<Metric> {
        Metric::ALL.into_iter().find(|m| m.name() == text)
    }

    pub fn value(self, cell: &CellOutcome) -> f64 {
        match self {
            Metric::Deviation => cell.deviation(),
            Metric::IntermediateSum => cell.intermediate_sum(),
            Metric::Fidelity => cell.fidelity,
            Metric::Concurrence => cell.concurrence,
        }
    }
}

/// Settings shared by every cell of a scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanSettings {
    /// Tolerance fields are used as given; the window is recomputed per cell.
    pub integrator: IntegratorOptions,
    /// Angle of the target state used for the fidelity metric.
    pub target_angle: f64,
}

impl Default for ScanSettings {
    fn default() -> Self {
        ScanSettings {
            integrator: IntegratorOptions::window(0.0, 1.0),
            target_angle: FRAC_PI_4,
        }
    }
}

/// Final-time observables of one propagation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CellOutcome {
    /// Final populations in subspace order.
    pub populations: [f64; 5],
    pub fidelity: f64,
    /// NaN where the two-qubit weight is too small.
    pub concurrence: f64,
}

impl CellOutcome {
    fn population(&self, label: crate::model::StateLabel) -> f64 {
        let i = Basis::Subspace.index_of(label).expect("subspace label");
        self.populations[i]
    }

    pub fn deviation(&self) -> f64 {
        (0.5 - self.population(G1G2_0)).abs()
    }

    pub fn intermediate_sum(&self) -> f64 {
        self.population(EG2_0) + self.population(G2G2_1) + self.population(G2E_0)
    }

    pub fn transferred(&self) -> f64 {
        self.population(G2G1_0)
    }

    pub fn objective(&self, weight: f64) -> f64 {
        self.deviation() + weight * self.intermediate_sum()
    }
}

/// Integrator options for one cell: the template's tolerances over the
/// cell's own default window.
pub(crate) fn cell_options(
    template: &IntegratorOptions,
    g: &GeometryParams,
    p: &PhysicalParams,
) -> IntegratorOptions {
    let (t_start, t_end) = PulseSchedule::new(g, p).default_window();
    IntegratorOptions { t_start, t_end, ..*template }
}

/// Runs a single cell from `|g1,g2,0⟩`.
pub fn run_cell(
    g: &GeometryParams,
    p: &PhysicalParams,
    settings: &ScanSettings,
) -> Result<CellOutcome, IntegrationError> {
    let model = EffectiveModel::new(g, p);
    let psi0 = StateVector::basis_state(Basis::Subspace, G1G2_0).expect("subspace label");
    let trace = propagate(&model, &psi0, &cell_options(&settings.integrator, g, p))?;
    let psi = &trace.final_state;
    let populations = std::array::from_fn(|i| psi.amplitude(SUBSPACE_LABELS[i]).norm_sqr());
    Ok(CellOutcome {
        populations,
        fidelity: target_fidelity(psi, settings.target_angle),
        concurrence: concurrence(psi).unwrap_or(f64::NAN),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_names_round_trip() {
        for m in Metric::ALL {
            assert_eq!(Metric::parse(m.name()), Some(m));
        }
        assert_eq!(Metric::parse("bogus"), None);
    }

    #[test]
    fn objective_combines_terms() {
        let c = CellOutcome {
            populations: [0.4, 0.01, 0.02, 0.03, 0.54],
            fidelity: 0.0,
            concurrence: 0.0,
        };
        assert!((c.deviation() - 0.1).abs() < 1e-15);
        assert!((c.intermediate_sum() - 0.06).abs() < 1e-15);
        assert!((c.objective(2.0) - 0.22).abs() < 1e-15);
    }
}
