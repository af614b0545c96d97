use nalgebra::SymmetricEigen;

use crate::error::AnalysisError;
use crate::model::{GeometryParams, PhysicalParams, PulseSchedule, chain_hamiltonian};

const EIGEN_EPS: f64 = 1e-15;
const EIGEN_MAX_ITER: usize = 10_000;

/// Ascending eigenvalues of the effective Hamiltonian at each time.
pub fn eigen_gap_trace(
    g: &GeometryParams,
    p: &PhysicalParams,
    times: &[f64],
) -> Result<Vec<[f64; 5]>, AnalysisError> {
    let sched = PulseSchedule::new(g, p);
    times
        .iter()
        .map(|&t| {
            let h = chain_hamiltonian(&sched.at(t), sched.doppler1());
            let eig = SymmetricEigen::try_new(h, EIGEN_EPS, EIGEN_MAX_ITER)
                .ok_or(AnalysisError::EigenNonConvergence { t })?;
            let mut ev: [f64; 5] = std::array::from_fn(|i| eig.eigenvalues[i]);
            if ev.iter().any(|x| !x.is_finite()) {
                return Err(AnalysisError::EigenNonConvergence { t });
            }
            ev.sort_by(f64::total_cmp);
            Ok(ev)
        })
        .collect()
}
