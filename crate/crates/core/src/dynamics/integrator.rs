//! Classical RK4 on a fixed output grid with step-halving acceptance.
//!
//! The window `[t_start, t_end]` is split into `samples - 1` equal output
//! intervals. Each interval gets its own substep count, sized so that
//! `h · ‖H‖ ≤ 1/50` on that interval (row-sum norm). A run is accepted when
//! doubling every substep count changes no sampled population by more than
//! `convergence_tol`; the finer run is returned.

use nalgebra::{DMatrix, DVector};

use super::trace::SimulationTrace;
use super::{row_sum_norm, Hamiltonian, StateVector};
use crate::error::IntegrationError;
use crate::model::{Basis, FullModel, Frame, GeometryParams, PhysicalParams, PulseSchedule};
use crate::C64;

/// Samples per radian of the fastest local rotation.
const SAMPLES_PER_RADIAN: f64 = 50.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepControl {
    /// Initial step from the local Hamiltonian norm.
    Auto,
    /// Initial step in seconds; still refined by halving.
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorOptions {
    pub t_start: f64,
    pub t_end: f64,
    pub step: StepControl,
    /// Accepted max population change under step halving.
    pub convergence_tol: f64,
    pub max_refinements: u32,
    /// Output samples including both end points.
    pub samples: usize,
}

impl IntegratorOptions {
    pub const DEFAULT_TOL: f64 = 1e-6;
    pub const DEFAULT_SAMPLES: usize = 2000;
    pub const DEFAULT_MAX_REFINEMENTS: u32 = 8;

    pub fn window(t_start: f64, t_end: f64) -> Self {
        IntegratorOptions {
            t_start,
            t_end,
            step: StepControl::Auto,
            convergence_tol: Self::DEFAULT_TOL,
            max_refinements: Self::DEFAULT_MAX_REFINEMENTS,
            samples: Self::DEFAULT_SAMPLES,
        }
    }

    /// Default options covering every pulse of `schedule`.
    pub fn for_schedule(schedule: &PulseSchedule) -> Self {
        let (a, b) = schedule.default_window();
        Self::window(a, b)
    }

    pub fn for_geometry(g: &GeometryParams, p: &PhysicalParams) -> Self {
        Self::for_schedule(&PulseSchedule::new(g, p))
    }

    pub fn validate(&self) -> Result<(), IntegrationError> {
        if !(self.t_start.is_finite() && self.t_end.is_finite() && self.t_end > self.t_start) {
            return Err(IntegrationError::InvalidOptions(
                "t_end must be finite and greater than t_start".into(),
            ));
        }
        self.validate_tolerances()
    }

    /// Checks everything except the window.
    pub fn validate_tolerances(&self) -> Result<(), IntegrationError> {
        let bad = |m: &str| Err(IntegrationError::InvalidOptions(m.to_string()));
        if let StepControl::Fixed(h) = self.step {
            if !(h.is_finite() && h > 0.0) {
                return bad("step must be finite and > 0");
            }
        }
        if !(self.convergence_tol.is_finite() && self.convergence_tol > 0.0) {
            return bad("convergence_tol must be finite and > 0");
        }
        if self.samples < 2 {
            return bad("samples must be >= 2");
        }
        Ok(())
    }

    fn sample_times(&self) -> Vec<f64> {
        let n = self.samples - 1;
        let dt = (self.t_end - self.t_start) / n as f64;
        (0..=n)
            .map(|k| if k == n { self.t_end } else { self.t_start + k as f64 * dt })
            .collect()
    }
}

fn initial_substeps<H: Hamiltonian>(h: &H, opts: &IntegratorOptions, times: &[f64]) -> Vec<u64> {
    match opts.step {
        StepControl::Fixed(step) => times
            .windows(2)
            .map(|w| ((w[1] - w[0]) / step).ceil().max(1.0) as u64)
            .collect(),
        StepControl::Auto => {
            let n = h.dim();
            let mut buf = DMatrix::zeros(n, n);
            let mut norm_at = |t: f64| {
                h.fill(t, &mut buf);
                row_sum_norm(&buf)
            };
            let mut left = norm_at(times[0]);
            times
                .windows(2)
                .map(|w| {
                    let mid = norm_at(0.5 * (w[0] + w[1]));
                    let right = norm_at(w[1]);
                    let peak = left.max(mid).max(right);
                    left = right;
                    ((w[1] - w[0]) * SAMPLES_PER_RADIAN * peak).ceil().max(1.0) as u64
                })
                .collect()
        }
    }
}

struct Workspace {
    h0: DMatrix<C64>,
    hm: DMatrix<C64>,
    h1: DMatrix<C64>,
    k1: DVector<C64>,
    k2: DVector<C64>,
    k3: DVector<C64>,
    k4: DVector<C64>,
    tmp: DVector<C64>,
}

impl Workspace {
    fn new(n: usize) -> Self {
        Workspace {
            h0: DMatrix::zeros(n, n),
            hm: DMatrix::zeros(n, n),
            h1: DMatrix::zeros(n, n),
            k1: DVector::zeros(n),
            k2: DVector::zeros(n),
            k3: DVector::zeros(n),
            k4: DVector::zeros(n),
            tmp: DVector::zeros(n),
        }
    }
}

const MINUS_I: C64 = C64::new(0.0, -1.0);
const ZERO: C64 = C64::new(0.0, 0.0);

fn run_fixed<H: Hamiltonian>(
    h: &H,
    psi0: &DVector<C64>,
    times: &[f64],
    substeps: &[u64],
) -> Result<Vec<DVector<C64>>, IntegrationError> {
    let n = h.dim();
    let mut ws = Workspace::new(n);
    let mut psi = psi0.clone();
    let mut out = Vec::with_capacity(times.len());
    out.push(psi.clone());
    h.fill(times[0], &mut ws.h0);
    for (k, w) in times.windows(2).enumerate() {
        let m = substeps[k];
        let step = (w[1] - w[0]) / m as f64;
        let half = 0.5 * step;
        let hc = C64::new(step, 0.0);
        let halfc = C64::new(half, 0.0);
        for j in 0..m {
            let t = w[0] + j as f64 * step;
            h.fill(t + half, &mut ws.hm);
            h.fill(t + step, &mut ws.h1);
            ws.k1.gemv(MINUS_I, &ws.h0, &psi, ZERO);
            ws.tmp.copy_from(&psi);
            ws.tmp.axpy(halfc, &ws.k1, C64::new(1.0, 0.0));
            ws.k2.gemv(MINUS_I, &ws.hm, &ws.tmp, ZERO);
            ws.tmp.copy_from(&psi);
            ws.tmp.axpy(halfc, &ws.k2, C64::new(1.0, 0.0));
            ws.k3.gemv(MINUS_I, &ws.hm, &ws.tmp, ZERO);
            ws.tmp.copy_from(&psi);
            ws.tmp.axpy(hc, &ws.k3, C64::new(1.0, 0.0));
            ws.k4.gemv(MINUS_I, &ws.h1, &ws.tmp, ZERO);
            let sixth = C64::new(step / 6.0, 0.0);
            let third = C64::new(step / 3.0, 0.0);
            psi.axpy(sixth, &ws.k1, C64::new(1.0, 0.0));
            psi.axpy(third, &ws.k2, C64::new(1.0, 0.0));
            psi.axpy(third, &ws.k3, C64::new(1.0, 0.0));
            psi.axpy(sixth, &ws.k4, C64::new(1.0, 0.0));
            std::mem::swap(&mut ws.h0, &mut ws.h1);
        }
        if !psi.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(IntegrationError::NonFinite { t: w[1] });
        }
        out.push(psi.clone());
    }
    Ok(out)
}

fn max_population_change(a: &[DVector<C64>], b: &[DVector<C64>]) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(x, y)| x.iter().zip(y.iter()).map(|(p, q)| (p.norm_sqr() - q.norm_sqr()).abs()))
        .fold(0.0, f64::max)
}

/// Integrates `i dψ/dt = H(t) ψ` from `psi0` over the options' window.
pub fn propagate<H: Hamiltonian>(
    h: &H,
    psi0: &StateVector,
    opts: &IntegratorOptions,
) -> Result<SimulationTrace, IntegrationError> {
    opts.validate()?;
    if psi0.dim() != h.dim() {
        return Err(IntegrationError::DimensionMismatch { state: psi0.dim(), hamiltonian: h.dim() });
    }
    let times = opts.sample_times();
    let mut substeps = initial_substeps(h, opts, &times);
    let mut coarse = run_fixed(h, psi0.amplitudes(), &times, &substeps)?;
    let mut achieved = f64::INFINITY;
    for refinement in 1..=opts.max_refinements {
        substeps.iter_mut().for_each(|m| *m *= 2);
        let fine = run_fixed(h, psi0.amplitudes(), &times, &substeps)?;
        achieved = max_population_change(&coarse, &fine);
        if achieved <= opts.convergence_tol {
            let steps = substeps.iter().sum();
            return Ok(SimulationTrace::from_samples(
                psi0.basis(),
                times,
                fine,
                steps,
                refinement,
                achieved,
            ));
        }
        coarse = fine;
    }
    Err(IntegrationError::NotConverged {
        refinements: opts.max_refinements,
        achieved,
        required: opts.convergence_tol,
    })
}

/// Propagates an 18-state vector under the full Hamiltonian in the rotating
/// frame, where the optical frequency has been removed analytically.
pub fn propagate_full(
    g: &GeometryParams,
    p: &PhysicalParams,
    psi0_full: &StateVector,
    opts: &IntegratorOptions,
) -> Result<SimulationTrace, IntegrationError> {
    if psi0_full.basis() != Basis::Full {
        return Err(IntegrationError::DimensionMismatch { state: psi0_full.dim(), hamiltonian: 18 });
    }
    let model = FullModel::new(g, p, Frame::Rotating);
    propagate(&model, psi0_full, opts)
}
