//! Atom trajectories, optical phases and the four time-dependent couplings.
//!
//! Two clocks appear here. [`atom_position`] and [`optical_phase`] take the
//! trajectory clock, in which atom 1 starts at `x = -x0`. Everything built on
//! [`PulseSchedule`] uses the pulse clock, whose origin is the instant atom 1
//! crosses the cavity axis plane `x = 0`; for counter-propagating atoms with
//! equal speeds atom 2 then crosses at `t = tau`.

use serde::Serialize;

use super::params::{GeometryParams, PhysicalParams};

/// Guard threshold: `|Δ|` above `min(Omega0, G0) / 100` breaks four-photon
/// resonance in practice.
pub const DETUNING_GUARD_RATIO: f64 = 1e-2;

/// Largest accepted ratio of peak coupling to the optical frequency scales.
pub const RWA_RATIO_LIMIT: f64 = 1e-3;

/// Number of Gaussian widths (in `exp(-x²/W²)` units) kept on each side of a
/// pulse by the default integration window.
const WINDOW_WIDTHS: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Atom {
    One,
    Two,
}

/// Position `(x, y, z)` of an atom at trajectory time `t`.
pub fn atom_position(g: &GeometryParams, atom: Atom, t: f64) -> [f64; 3] {
    match atom {
        Atom::One => [
            -g.x0 + g.v1 * t * g.theta1.cos(),
            -g.y0 + g.v1 * t * g.theta1.sin(),
            g.z0,
        ],
        Atom::Two => {
            let s = t - g.tau;
            [g.x0 + g.v2 * s * g.theta2.cos(), -g.y0 + g.v2 * s * g.theta2.sin(), 0.0]
        }
    }
}

/// Doppler part of the laser phase seen by an atom: `-k v1 t sinθ1` or
/// `-k v2 (t - tau) sinθ2`.
pub fn doppler_phase(g: &GeometryParams, atom: Atom, t: f64) -> f64 {
    let k = g.wavenumber();
    match atom {
        Atom::One => -k * g.v1 * t * g.theta1.sin(),
        Atom::Two => -k * g.v2 * (t - g.tau) * g.theta2.sin(),
    }
}

/// Optical laser phase `omega_L t + doppler_phase` seen by an atom.
pub fn optical_phase(g: &GeometryParams, p: &PhysicalParams, atom: Atom, t: f64) -> f64 {
    p.omega * t + doppler_phase(g, atom, t)
}

/// TEM00 cavity coupling at `(x, y, z)`.
pub fn cavity_coupling(p: &PhysicalParams, g: &GeometryParams, x: f64, y: f64, z: f64) -> f64 {
    let w2 = g.waist_cavity * g.waist_cavity;
    p.g0 * (-(x * x + y * y) / w2).exp() * (std::f64::consts::TAU * z / g.lambda).cos()
}

/// Laser coupling at transverse offset `x` from the beam axis and height `z`.
pub fn laser_coupling(p: &PhysicalParams, g: &GeometryParams, x: f64, z: f64) -> f64 {
    let w2 = g.waist_laser * g.waist_laser;
    p.omega0 * (-(x * x + z * z) / w2).exp()
}

/// Instantaneous couplings (rad/s) at pulse-clock time `t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PulseSnapshot {
    pub t: f64,
    pub omega1: f64,
    pub g1: f64,
    pub g2: f64,
    pub omega2: f64,
    pub delta: f64,
}

impl PulseSnapshot {
    pub fn new(omega1: f64, g1: f64, g2: f64, omega2: f64) -> Self {
        PulseSnapshot { t: 0.0, omega1, g1, g2, omega2, delta: 0.0 }
    }
}

/// Couplings along both trajectories with the trigonometric and
/// standing-wave factors precomputed.
#[derive(Debug, Clone, Copy)]
pub struct PulseSchedule {
    geometry: GeometryParams,
    physics: PhysicalParams,
    /// Trajectory time at which atom 1 crosses `x = 0`.
    origin: f64,
    dir1: [f64; 2],
    dir2: [f64; 2],
    standing1: f64,
    standing2: f64,
    inv_wc2: f64,
    inv_wl2: f64,
    delta: f64,
    doppler1: f64,
}

impl PulseSchedule {
    pub fn new(g: &GeometryParams, p: &PhysicalParams) -> Self {
        let (s1, c1) = g.theta1.sin_cos();
        let (s2, c2) = g.theta2.sin_cos();
        let k = g.wavenumber();
        let standing = |z: f64| (std::f64::consts::TAU * z / g.lambda).cos();
        PulseSchedule {
            geometry: *g,
            physics: *p,
            origin: g.x0 / (g.v1 * c1),
            dir1: [g.v1 * c1, g.v1 * s1],
            dir2: [g.v2 * c2, g.v2 * s2],
            standing1: standing(g.z0),
            standing2: standing(0.0),
            inv_wc2: 1.0 / (g.waist_cavity * g.waist_cavity),
            inv_wl2: 1.0 / (g.waist_laser * g.waist_laser),
            delta: k * (g.v1 * s1 - g.v2 * s2),
            doppler1: k * g.v1 * s1,
        }
    }

    pub fn geometry(&self) -> &GeometryParams {
        &self.geometry
    }

    pub fn physics(&self) -> &PhysicalParams {
        &self.physics
    }

    /// Four-photon detuning `k (v1 sinθ1 - v2 sinθ2)`.
    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Common diagonal shift `k v1 sinθ1` of the three intermediate states.
    pub fn doppler1(&self) -> f64 {
        self.doppler1
    }

    /// Pulse-clock time at which atom 2 crosses `x = 0`.
    pub fn atom2_crossing(&self) -> f64 {
        let g = &self.geometry;
        g.tau + g.x0 / (g.v2 * (-g.theta2.cos())) - self.origin
    }

    pub fn at(&self, t: f64) -> PulseSnapshot {
        let g = &self.geometry;
        let p = &self.physics;
        let s1 = t + self.origin;
        let x1 = -g.x0 + self.dir1[0] * s1;
        let y1 = -g.y0 + self.dir1[1] * s1;
        let s2 = s1 - g.tau;
        let x2 = g.x0 + self.dir2[0] * s2;
        let y2 = -g.y0 + self.dir2[1] * s2;
        let z1 = g.z0;
        let dx1 = x1 - g.d;
        let dx2 = x2 - g.d;
        PulseSnapshot {
            t,
            g1: p.g0 * (-(x1 * x1 + y1 * y1) * self.inv_wc2).exp() * self.standing1,
            omega1: p.omega0 * (-(dx1 * dx1 + z1 * z1) * self.inv_wl2).exp(),
            g2: p.g0 * (-(x2 * x2 + y2 * y2) * self.inv_wc2).exp() * self.standing2,
            omega2: p.omega0 * (-(dx2 * dx2) * self.inv_wl2).exp(),
            delta: self.delta,
        }
    }

    /// Integration window keeping every pulse below `exp(-25)` of its peak at
    /// both ends.
    pub fn default_window(&self) -> (f64, f64) {
        let g = &self.geometry;
        let u1 = self.dir1[0].abs();
        let u2 = self.dir2[0].abs();
        let u = u1.min(u2);
        let c2 = self.atom2_crossing();
        let d = g.d.abs();
        let start = (-WINDOW_WIDTHS * g.waist_cavity / u1)
            .min(c2 - WINDOW_WIDTHS * g.waist_cavity / u2)
            .min((-d - WINDOW_WIDTHS * g.waist_laser) / u + c2.min(0.0));
        let end = (WINDOW_WIDTHS * g.waist_cavity / u1)
            .max(c2 + WINDOW_WIDTHS * g.waist_cavity / u2)
            .max((d + WINDOW_WIDTHS * g.waist_laser) / u + c2.max(0.0));
        (start, end)
    }

    /// Pulse-clock times at which atom 1 and atom 2 sit on the laser axis.
    pub fn laser_centres(&self) -> (f64, f64) {
        let g = &self.geometry;
        let t1 = (g.d + g.x0) / self.dir1[0] - self.origin;
        let t2 = g.tau + (g.d - g.x0) / self.dir2[0] - self.origin;
        (t1, t2)
    }
}

/// Instantaneous Rabi frequencies at pulse-clock time `t`.
pub fn pulses_at(g: &GeometryParams, p: &PhysicalParams, t: f64) -> PulseSnapshot {
    PulseSchedule::new(g, p).at(t)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DetuningReport {
    pub delta: f64,
    pub threshold: f64,
    pub guard_tripped: bool,
}

pub fn four_photon_detuning(g: &GeometryParams, p: &PhysicalParams) -> DetuningReport {
    let k = g.wavenumber();
    let delta = k * (g.v1 * g.theta1.sin() - g.v2 * g.theta2.sin());
    let threshold = DETUNING_GUARD_RATIO * p.omega0.min(p.g0);
    DetuningReport { delta, threshold, guard_tripped: delta.abs() > threshold }
}

/// Resonant-approximation check: peak couplings against the optical
/// frequency and both phase rates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RwaReport {
    pub peak_coupling: f64,
    pub slowest_optical_rate: f64,
    pub ratio: f64,
    pub valid: bool,
}

pub fn rwa_check(g: &GeometryParams, p: &PhysicalParams) -> RwaReport {
    let k = g.wavenumber();
    let rate1 = (p.omega - k * g.v1 * g.theta1.sin()).abs();
    let rate2 = (p.omega - k * g.v2 * g.theta2.sin()).abs();
    let slowest = p.omega.min(rate1).min(rate2);
    let peak = p.omega0.abs().max(p.g0.abs());
    let ratio = peak / slowest;
    RwaReport { peak_coupling: peak, slowest_optical_rate: slowest, ratio, valid: ratio <= RWA_RATIO_LIMIT }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{E, PI};

    use approx::assert_relative_eq;

    use super::*;

    fn geom() -> GeometryParams {
        GeometryParams::reference_stirap()
    }

    #[test]
    fn atom1_reaches_axis_after_x0_over_v1() {
        let mut g = geom();
        g.x0 = 40e-6;
        let p = atom_position(&g, Atom::One, 0.0);
        assert_eq!(p, [-40e-6, 0.0, g.z0]);
        let p = atom_position(&g, Atom::One, 20e-6);
        assert!(p[0].abs() < 1e-18);
    }

    #[test]
    fn atom2_start_and_delay() {
        let mut g = geom();
        g.x0 = 40e-6;
        g.tau = 0.0;
        let p = atom_position(&g, Atom::Two, 0.0);
        assert_relative_eq!(p[0], 40e-6);
        assert!(p[1].abs() < 1e-30);
        assert_eq!(p[2], 0.0);
        g.tau = -9e-6;
        let p = atom_position(&g, Atom::Two, 0.0);
        assert_relative_eq!(p[0], 22e-6, max_relative = 1e-12);
    }

    #[test]
    fn optical_phases() {
        let g = geom();
        let p = PhysicalParams::reference_stirap();
        let t = 3e-7;
        assert_eq!(optical_phase(&g, &p, Atom::One, t), p.omega * t);
        assert_relative_eq!(optical_phase(&g, &p, Atom::Two, t), p.omega * t, max_relative = 1e-15);
        let mut g = geom();
        g.theta1 = PI / 18.0;
        let doppler = -doppler_phase(&g, Atom::One, 1e-6);
        // k v t sinθ = 2π/780e-9 · 2 · 1e-6 · sin(10°)
        let expected = 2.0 * PI / 780e-9 * 2.0 * 1e-6 * (PI / 18.0).sin();
        assert_relative_eq!(doppler, expected, max_relative = 1e-14);
        assert!((doppler - 2.80).abs() < 0.01);
    }

    #[test]
    fn cavity_profile() {
        let g = geom();
        let p = PhysicalParams::reference_stirap();
        assert_eq!(cavity_coupling(&p, &g, 0.0, 0.0, 0.0), p.g0);
        assert_relative_eq!(cavity_coupling(&p, &g, g.waist_cavity, 0.0, 0.0), p.g0 / E, max_relative = 1e-14);
        let v = cavity_coupling(&p, &g, 0.0, 0.0, 5.5e-6) / p.g0;
        assert_relative_eq!(v, (2.0 * PI * 5.5 / 0.78).cos(), max_relative = 1e-12);
        assert!((v - 0.9485).abs() < 5e-4);
    }

    #[test]
    fn laser_profile() {
        let g = geom();
        let p = PhysicalParams::reference_stirap();
        assert_eq!(laser_coupling(&p, &g, 0.0, 0.0), p.omega0);
        assert_relative_eq!(laser_coupling(&p, &g, g.waist_laser, 0.0), p.omega0 / E, max_relative = 1e-14);
        let v = laser_coupling(&p, &g, 0.0, 5.5e-6) / p.omega0;
        assert!((v - 0.9271).abs() < 1e-4);
    }

    #[test]
    fn pulses_match_closed_form_subequations() {
        let g = GeometryParams::reference_half_stirap(5.5e-6, 6e-6);
        let p = PhysicalParams::reference_stirap();
        let v = g.v1;
        let (wc, wl) = (g.waist_cavity, g.waist_laser);
        for &t in &[-30e-6, -3e-6, 0.0, 1.7e-6, 3e-6, 25e-6] {
            let s = pulses_at(&g, &p, t);
            let vt = v * t;
            let g1 = p.g0 * (-(vt * vt) / (wc * wc)).exp() * (2.0 * PI * g.z0 / g.lambda).cos();
            let o1 = p.omega0 * (-(g.z0 * g.z0) / (wl * wl)).exp() * (-(vt - g.d).powi(2) / (wl * wl)).exp();
            let g2 = p.g0 * (-(vt * vt) / (wc * wc)).exp();
            let o2 = p.omega0 * (-(vt + g.d).powi(2) / (wl * wl)).exp();
            assert_relative_eq!(s.g1, g1, max_relative = 1e-9);
            assert_relative_eq!(s.omega1, o1, max_relative = 1e-9);
            assert_relative_eq!(s.g2, g2, max_relative = 1e-9);
            assert_relative_eq!(s.omega2, o2, max_relative = 1e-9);
        }
    }

    #[test]
    fn composition_with_profiles() {
        let mut g = geom();
        g.y0 = 7e-6;
        g.theta1 = 0.2;
        g.theta2 = PI - 0.3;
        let p = PhysicalParams::reference_stirap();
        let sched = PulseSchedule::new(&g, &p);
        let origin = g.x0 / (g.v1 * g.theta1.cos());
        for &t in &[-12e-6, 0.0, 4e-6] {
            let s = sched.at(t);
            let [x1, y1, z1] = atom_position(&g, Atom::One, t + origin);
            let [x2, y2, z2] = atom_position(&g, Atom::Two, t + origin);
            assert_relative_eq!(s.g1, cavity_coupling(&p, &g, x1, y1, z1), max_relative = 1e-9);
            assert_relative_eq!(s.omega1, laser_coupling(&p, &g, x1 - g.d, z1), max_relative = 1e-9);
            assert_relative_eq!(s.g2, cavity_coupling(&p, &g, x2, y2, z2), max_relative = 1e-9);
            assert_relative_eq!(s.omega2, laser_coupling(&p, &g, x2 - g.d, z2), max_relative = 1e-9);
        }
    }

    #[test]
    fn reference_peaks() {
        let g = geom();
        let p = PhysicalParams::reference_stirap();
        let s = pulses_at(&g, &p, 0.0);
        assert!((s.g1 / 1e6 - 6.17).abs() < 0.01, "{}", s.g1);
        let s = pulses_at(&g, &p, g.d / g.v1);
        assert!((s.omega1 / 1e6 - 1.854).abs() < 1e-3, "{}", s.omega1);
    }

    #[test]
    fn tails_vanish() {
        let g = GeometryParams::reference_half_stirap(5.5e-6, 6e-6);
        let p = PhysicalParams::reference_stirap();
        let far = 8.0 * g.waist_cavity.max(g.waist_laser) / g.v1;
        for t in [-far, far] {
            let s = pulses_at(&g, &p, t);
            for v in [s.omega1, s.g1, s.g2, s.omega2] {
                assert!(v.abs() < 1e-27 * p.g0.max(p.omega0), "{v} at {t}");
            }
        }
    }

    #[test]
    fn laser_peaks_are_counterintuitively_ordered() {
        let g = GeometryParams::reference_half_stirap(0.0, 6e-6);
        let p = PhysicalParams::reference_half_stirap();
        let (t1, t2) = PulseSchedule::new(&g, &p).laser_centres();
        assert_relative_eq!(t1, g.d / g.v1, max_relative = 1e-9);
        assert_relative_eq!(t2, -g.d / g.v1, max_relative = 1e-9);
        let peak2 = pulses_at(&g, &p, t2).omega2;
        for dt in [-1e-7, 1e-7] {
            assert!(pulses_at(&g, &p, t2 + dt).omega2 < peak2);
            assert!(pulses_at(&g, &p, t1 + dt).omega1 < pulses_at(&g, &p, t1).omega1);
        }
    }

    #[test]
    fn detuning_cases() {
        let p = PhysicalParams::reference_stirap();
        let g = geom();
        let r = four_photon_detuning(&g, &p);
        assert!(r.delta.abs() < 1e-6 * r.threshold);
        assert!(!r.guard_tripped);

        let mut g = geom();
        g.theta1 = 0.3;
        g.theta2 = PI - 0.3;
        let r = four_photon_detuning(&g, &p);
        assert!(r.delta.abs() < 1e-9);

        let mut g = geom();
        g.theta1 = PI / 18.0;
        let r = four_photon_detuning(&g, &p);
        assert!((r.delta / 1e6 - 2.80).abs() < 0.01, "{}", r.delta);
        assert!(r.guard_tripped);
    }

    #[test]
    fn default_window_matches_closed_form() {
        let g = geom();
        let p = PhysicalParams::reference_stirap();
        let (a, b) = PulseSchedule::new(&g, &p).default_window();
        let v = g.v1;
        let (wc, wl, d, tau) = (g.waist_cavity, g.waist_laser, g.d, g.tau);
        let start = (-5.0 * wc / v).min(tau - 5.0 * wc / v).min((-d - 5.0 * wl) / v + tau.min(0.0));
        let end = (5.0 * wc / v).max(tau + 5.0 * wc / v).max((d + 5.0 * wl) / v + tau.max(0.0));
        assert_relative_eq!(a, start, max_relative = 1e-9);
        assert_relative_eq!(b, end, max_relative = 1e-9);
        let sched = PulseSchedule::new(&g, &p);
        for t in [a, b] {
            let s = sched.at(t);
            assert!(s.g1.abs() < 1e-6 * p.g0 && s.g2.abs() < 1e-6 * p.g0);
            assert!(s.omega1 < 1e-6 * p.omega0 && s.omega2 < 1e-6 * p.omega0);
        }
    }

    #[test]
    fn rwa_holds_for_optical_transition() {
        let r = rwa_check(&geom(), &PhysicalParams::reference_stirap());
        assert!(r.valid);
        assert!(r.ratio < 1e-8);
        let mut p = PhysicalParams::reference_stirap();
        p.omega = 1e8;
        assert!(!rwa_check(&geom(), &p).valid);
    }
}
