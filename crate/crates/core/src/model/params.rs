use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::units::SPEED_OF_LIGHT;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("`{field}` {constraint}")]
pub struct ParamError {
    pub field: &'static str,
    pub constraint: &'static str,
}

fn check(ok: bool, field: &'static str, constraint: &'static str) -> Result<(), ParamError> {
    if ok {
        Ok(())
    } else {
        Err(ParamError { field, constraint })
    }
}

/// Atom trajectories and beam/cavity geometry. Lengths in meters, speeds in
/// m/s, angles in radians, `tau` in seconds.
///
/// Atom 1 moves in the plane `z = z0`, atom 2 in `z = 0`. The cavity mode is
/// centred on the origin with its axis along `z`; the laser propagates along
/// `y` and is centred on `x = d, z = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeometryParams {
    pub x0: f64,
    pub y0: f64,
    pub z0: f64,
    pub d: f64,
    pub v1: f64,
    pub v2: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub tau: f64,
    pub lambda: f64,
    pub waist_cavity: f64,
    pub waist_laser: f64,
}

impl GeometryParams {
    /// Counter-propagating atoms at speed `v` in the `y = 0` plane, with the
    /// default entry offset `x0 = 5 W_C`.
    pub fn counter_propagating(
        v: f64,
        z0: f64,
        d: f64,
        tau: f64,
        lambda: f64,
        waist_cavity: f64,
        waist_laser: f64,
    ) -> Self {
        GeometryParams {
            x0: 5.0 * waist_cavity,
            y0: 0.0,
            z0,
            d,
            v1: v,
            v2: v,
            theta1: 0.0,
            theta2: PI,
            tau,
            lambda,
            waist_cavity,
            waist_laser,
        }
    }

    /// Complete two-atom transfer geometry: second atom leads by 9 µs.
    pub fn reference_stirap() -> Self {
        Self::counter_propagating(2.0, 5.5e-6, 6e-6, -9e-6, 780e-9, 40e-6, 20e-6)
    }

    /// Synchronized atoms (`tau = 0`) with the sweep waists; `z0`, `d` free.
    pub fn reference_half_stirap(z0: f64, d: f64) -> Self {
        Self::counter_propagating(2.0, z0, d, 0.0, 780e-9, 40e-6, 20e-6)
    }

    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.lambda
    }

    /// Speed of the slower atom, used for the pulse-width scales.
    pub fn v_min(&self) -> f64 {
        self.v1.min(self.v2)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        let finite = [
            self.x0,
            self.y0,
            self.z0,
            self.d,
            self.v1,
            self.v2,
            self.theta1,
            self.theta2,
            self.tau,
            self.lambda,
            self.waist_cavity,
            self.waist_laser,
        ]
        .iter()
        .all(|x| x.is_finite());
        check(finite, "geometry", "must contain only finite values")?;
        check(self.v1 > 0.0, "v1", "must be > 0")?;
        check(self.v2 > 0.0, "v2", "must be > 0")?;
        check(self.lambda > 0.0, "lambda", "must be > 0")?;
        check(self.waist_cavity > 0.0, "waist_cavity", "must be > 0")?;
        check(self.waist_laser > 0.0, "waist_laser", "must be > 0")?;
        check((0.0..FRAC_PI_2).contains(&self.theta1), "theta1", "must lie in [0, pi/2)")?;
        check(
            self.theta2 > FRAC_PI_2 && self.theta2 <= PI,
            "theta2",
            "must lie in (pi/2, pi]",
        )?;
        Ok(())
    }
}

/// Peak couplings, the common resonance frequency and optional loss rates,
/// all angular (rad/s).
///
/// Transition, cavity and laser frequencies are resonant, so a single value
/// is stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub omega0: f64,
    pub g0: f64,
    pub omega: f64,
    pub kappa: f64,
    pub gamma: f64,
}

impl PhysicalParams {
    /// Lossless couplings, resonant with light of wavelength `lambda`.
    pub fn resonant(omega0: f64, g0: f64, lambda: f64) -> Self {
        PhysicalParams {
            omega0,
            g0,
            omega: 2.0 * PI * SPEED_OF_LIGHT / lambda,
            kappa: 0.0,
            gamma: 0.0,
        }
    }

    /// `Omega0 = 2e6`, `G0 = 6.5e6` rad/s at 780 nm.
    pub fn reference_stirap() -> Self {
        Self::resonant(2e6, 6.5e6, 780e-9)
    }

    /// `Omega0 = 20 v / W_L`, `G0 = 100 v / W_C` with the sweep geometry.
    pub fn reference_half_stirap() -> Self {
        let g = GeometryParams::reference_half_stirap(0.0, 0.0);
        Self::resonant(20.0 * g.v1 / g.waist_laser, 100.0 * g.v1 / g.waist_cavity, g.lambda)
    }

    pub fn with_losses(mut self, kappa: f64, gamma: f64) -> Self {
        self.kappa = kappa;
        self.gamma = gamma;
        self
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        check(self.omega0 > 0.0 && self.omega0.is_finite(), "omega0", "must be finite and > 0")?;
        check(self.g0 > 0.0 && self.g0.is_finite(), "g0", "must be finite and > 0")?;
        check(self.omega > 0.0 && self.omega.is_finite(), "omega", "must be finite and > 0")?;
        check(self.kappa >= 0.0 && self.kappa.is_finite(), "kappa", "must be finite and >= 0")?;
        check(self.gamma >= 0.0 && self.gamma.is_finite(), "gamma", "must be finite and >= 0")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_sets_validate() {
        GeometryParams::reference_stirap().validate().unwrap();
        GeometryParams::reference_half_stirap(16e-6, 24e-6).validate().unwrap();
        PhysicalParams::reference_stirap().validate().unwrap();
        let p = PhysicalParams::reference_half_stirap();
        assert!((p.omega0 - 2e6).abs() < 1e-6);
        assert!((p.g0 - 5e6).abs() < 1e-6);
    }

    #[test]
    fn angle_ranges() {
        let mut g = GeometryParams::reference_stirap();
        g.theta1 = FRAC_PI_2;
        assert_eq!(g.validate().unwrap_err().field, "theta1");
        g.theta1 = 0.0;
        g.theta2 = FRAC_PI_2;
        assert_eq!(g.validate().unwrap_err().field, "theta2");
        g.theta2 = PI;
        g.v2 = 0.0;
        assert_eq!(g.validate().unwrap_err().field, "v2");
    }

    #[test]
    fn negative_loss_rejected() {
        let p = PhysicalParams::reference_stirap().with_losses(-1.0, 0.0);
        assert_eq!(p.validate().unwrap_err().field, "kappa");
    }
}
