use nalgebra::DMatrix;

use super::Hamiltonian;
use crate::model::{Basis, PhysicalParams};
use crate::C64;

/// `H(t) - i(Γ/2)·(excited atoms) - i(κ/2)·(photons)` on the diagonal.
///
/// Evolution is norm non-increasing; `1 - ‖ψ(t_end)‖²` is the no-jump loss
/// probability.
pub struct Lossy<H> {
    inner: H,
    decay: Vec<f64>,
}

pub fn with_losses<H: Hamiltonian>(inner: H, basis: Basis, p: &PhysicalParams) -> Lossy<H> {
    assert_eq!(inner.dim(), basis.dim(), "Hamiltonian dimension must match basis");
    let decay = basis
        .labels()
        .iter()
        .map(|l| 0.5 * p.gamma * l.excited_atoms() as f64 + 0.5 * p.kappa * l.photons as f64)
        .collect();
    Lossy { inner, decay }
}

impl<H: Hamiltonian> Lossy<H> {
    /// Imaginary-part magnitudes subtracted from the diagonal.
    pub fn decay_rates(&self) -> &[f64] {
        &self.decay
    }
}

impl<H: Hamiltonian> Hamiltonian for Lossy<H> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn fill(&self, t: f64, out: &mut DMatrix<C64>) {
        self.inner.fill(t, out);
        for (i, &g) in self.decay.iter().enumerate() {
            out[(i, i)] -= C64::new(0.0, g);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{EffectiveModel, GeometryParams};

    #[test]
    fn decay_pattern_on_subspace() {
        let g = GeometryParams::reference_stirap();
        let p = PhysicalParams::reference_stirap().with_losses(2.0, 4.0);
        let l = with_losses(EffectiveModel::new(&g, &p), Basis::Subspace, &p);
        assert_eq!(l.decay_rates(), &[0.0, 2.0, 1.0, 2.0, 0.0]);
    }

    #[test]
    fn full_basis_counts_both_atoms() {
        let g = GeometryParams::reference_stirap();
        let p = PhysicalParams::reference_stirap().with_losses(2.0, 4.0);
        let model = crate::model::FullModel::new(&g, &p, crate::model::Frame::Rotating);
        let l = with_losses(model, Basis::Full, &p);
        let ee1 = Basis::Full
            .index_of(crate::model::StateLabel::new(crate::model::Level::E, crate::model::Level::E, 1))
            .unwrap();
        assert_eq!(l.decay_rates()[ee1], 2.0 * 2.0 + 1.0);
    }
}
