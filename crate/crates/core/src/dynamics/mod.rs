//! Time-dependent Schrödinger integration and observables.

mod integrator;
mod losses;
mod state;
mod trace;

use nalgebra::DMatrix;

use crate::C64;

pub use integrator::{propagate, propagate_full, IntegratorOptions, StepControl};
pub use losses::{with_losses, Lossy};
pub use state::{populations, StateVector};
pub use trace::SimulationTrace;

/// A time-dependent Hamiltonian that writes `H(t)` into a caller-owned
/// square buffer, so the integrator never allocates per step.
pub trait Hamiltonian: Sync {
    fn dim(&self) -> usize;
    fn fill(&self, t: f64, out: &mut DMatrix<C64>);
}

impl<H: Hamiltonian + ?Sized> Hamiltonian for &H {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn fill(&self, t: f64, out: &mut DMatrix<C64>) {
        (**self).fill(t, out)
    }
}

/// Wraps a closure `|t, out| ...` as a [`Hamiltonian`].
pub struct FnHamiltonian<F> {
    dim: usize,
    f: F,
}

impl<F> FnHamiltonian<F>
where
    F: Fn(f64, &mut DMatrix<C64>) + Sync,
{
    pub fn new(dim: usize, f: F) -> Self {
        FnHamiltonian { dim, f }
    }
}

impl<F> Hamiltonian for FnHamiltonian<F>
where
    F: Fn(f64, &mut DMatrix<C64>) + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn fill(&self, t: f64, out: &mut DMatrix<C64>) {
        (self.f)(t, out)
    }
}

/// Max absolute row sum.
pub(crate) fn row_sum_norm(h: &DMatrix<C64>) -> f64 {
    h.row_iter()
        .map(|r| r.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}
