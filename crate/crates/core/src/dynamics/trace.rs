use nalgebra::DVector;

use super::state::StateVector;
use crate::model::{Basis, StateLabel};
use crate::C64;

/// Sampled evolution on an equally spaced output grid.
#[derive(Debug, Clone)]
pub struct SimulationTrace {
    pub basis: Basis,
    pub times: Vec<f64>,
    /// `populations[state][sample]`.
    pub populations: Vec<Vec<f64>>,
    /// `‖ψ(t)‖` per sample.
    pub norm: Vec<f64>,
    /// `|⟨D(t)|ψ(t)⟩|²`, filled in by [`crate::analysis::annotate_dark_overlap`].
    pub dark_overlap: Option<Vec<f64>>,
    pub amplitudes: Vec<DVector<C64>>,
    pub final_state: StateVector,
    /// RK4 steps taken by the accepted run.
    pub steps: u64,
    /// Number of step halvings beyond the initial step.
    pub refinements: u32,
    /// Max population change between the accepted run and the run at twice
    /// its step.
    pub achieved_tolerance: f64,
}

impl SimulationTrace {
    pub(crate) fn from_samples(
        basis: Basis,
        times: Vec<f64>,
        amplitudes: Vec<DVector<C64>>,
        steps: u64,
        refinements: u32,
        achieved_tolerance: f64,
    ) -> Self {
        let dim = basis.dim();
        let populations = (0..dim)
            .map(|i| amplitudes.iter().map(|a| a[i].norm_sqr()).collect())
            .collect();
        let norm = amplitudes.iter().map(|a| a.norm()).collect();
        let final_state =
            StateVector::from_raw(basis, amplitudes.last().expect("at least two samples").clone());
        SimulationTrace {
            basis,
            times,
            populations,
            norm,
            dark_overlap: None,
            amplitudes,
            final_state,
            steps,
            refinements,
            achieved_tolerance,
        }
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn population(&self, label: StateLabel) -> Option<&[f64]> {
        self.basis.index_of(label).map(|i| self.populations[i].as_slice())
    }

    pub fn final_population(&self, label: StateLabel) -> f64 {
        self.population(label).and_then(|p| p.last().copied()).unwrap_or(0.0)
    }

    pub fn peak_population(&self, label: StateLabel) -> f64 {
        self.population(label)
            .map(|p| p.iter().copied().fold(0.0, f64::max))
            .unwrap_or(0.0)
    }

    /// Largest `|1 - ‖ψ‖²|` over the samples.
    pub fn max_norm_defect(&self) -> f64 {
        self.norm.iter().map(|n| (1.0 - n * n).abs()).fold(0.0, f64::max)
    }
}
