use nalgebra::DVector;

use crate::model::{Basis, StateLabel};
use crate::C64;

/// Complex amplitudes over a labelled basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    basis: Basis,
    amplitudes: DVector<C64>,
}

impl StateVector {
    /// Normalizes `amplitudes`; returns `None` for a zero or non-finite vector
    /// or a length that does not match `basis`.
    pub fn new(basis: Basis, amplitudes: DVector<C64>) -> Option<Self> {
        if amplitudes.len() != basis.dim() {
            return None;
        }
        let norm = amplitudes.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return None;
        }
        Some(StateVector { basis, amplitudes: amplitudes / C64::new(norm, 0.0) })
    }

    /// Keeps the amplitudes as given. Used for evolved states whose norm may
    /// have decayed.
    pub fn from_raw(basis: Basis, amplitudes: DVector<C64>) -> Self {
        assert_eq!(amplitudes.len(), basis.dim(), "amplitude length must match basis");
        StateVector { basis, amplitudes }
    }

    pub fn basis_state(basis: Basis, label: StateLabel) -> Option<Self> {
        let i = basis.index_of(label)?;
        let mut a = DVector::zeros(basis.dim());
        a[i] = C64::new(1.0, 0.0);
        Some(StateVector { basis, amplitudes: a })
    }

    /// Normalized `Σ cᵢ |labelᵢ⟩`.
    pub fn superposition(basis: Basis, terms: &[(StateLabel, C64)]) -> Option<Self> {
        let mut a = DVector::zeros(basis.dim());
        for &(label, c) in terms {
            a[basis.index_of(label)?] += c;
        }
        Self::new(basis, a)
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, label: StateLabel) -> C64 {
        self.basis
            .index_of(label)
            .map(|i| self.amplitudes[i])
            .unwrap_or(C64::new(0.0, 0.0))
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    /// `‖ψ‖²`.
    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// Embeds a subspace state into the 18-state basis.
    pub fn to_full(&self) -> StateVector {
        match self.basis {
            Basis::Full => self.clone(),
            Basis::Subspace => {
                let mut a = DVector::zeros(18);
                for (j, &i) in Basis::subspace_in_full().iter().enumerate() {
                    a[i] = self.amplitudes[j];
                }
                StateVector { basis: Basis::Full, amplitudes: a }
            }
        }
    }
}

/// Probabilities by basis label; they sum to `‖ψ‖²`.
pub fn populations(psi: &StateVector) -> Vec<(StateLabel, f64)> {
    psi.amplitudes
        .iter()
        .enumerate()
        .map(|(i, a)| (psi.basis.label(i), a.norm_sqr()))
        .collect()
}
