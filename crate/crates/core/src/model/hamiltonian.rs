//! Effective 5×5 and full 18×18 Hamiltonians (ħ = 1, rad/s).

use nalgebra::{DMatrix, Matrix5};

use super::basis::{Basis, Level, StateLabel};
use super::params::{GeometryParams, PhysicalParams};
use super::pulses::{doppler_phase, Atom, PulseSchedule, PulseSnapshot};
use crate::dynamics::Hamiltonian;
use crate::C64;

/// Rotating-frame chain Hamiltonian over the subspace basis.
///
/// Off-diagonals are the couplings `Omega1, G1, G2, Omega2` along the chain;
/// the diagonal is `(0, k v1 sinθ1, k v1 sinθ1, k v1 sinθ1, Delta)`.
pub fn effective_hamiltonian(
    s: &PulseSnapshot,
    g: &GeometryParams,
    _p: &PhysicalParams,
) -> Matrix5<f64> {
    let doppler = g.wavenumber() * g.v1 * g.theta1.sin();
    chain_hamiltonian(s, doppler)
}

pub fn chain_hamiltonian(s: &PulseSnapshot, doppler: f64) -> Matrix5<f64> {
    let mut h = Matrix5::zeros();
    h[(0, 1)] = s.omega1;
    h[(1, 0)] = s.omega1;
    h[(1, 2)] = s.g1;
    h[(2, 1)] = s.g1;
    h[(2, 3)] = s.g2;
    h[(3, 2)] = s.g2;
    h[(3, 4)] = s.omega2;
    h[(4, 3)] = s.omega2;
    h[(1, 1)] = doppler;
    h[(2, 2)] = doppler;
    h[(3, 3)] = doppler;
    h[(4, 4)] = s.delta;
    h
}

/// Effective-model Hamiltonian source for the integrator.
#[derive(Debug, Clone, Copy)]
pub struct EffectiveModel {
    schedule: PulseSchedule,
}

impl EffectiveModel {
    pub fn new(g: &GeometryParams, p: &PhysicalParams) -> Self {
        EffectiveModel { schedule: PulseSchedule::new(g, p) }
    }

    pub fn schedule(&self) -> &PulseSchedule {
        &self.schedule
    }

    pub fn matrix(&self, t: f64) -> Matrix5<f64> {
        chain_hamiltonian(&self.schedule.at(t), self.schedule.doppler1())
    }
}

impl Hamiltonian for EffectiveModel {
    fn dim(&self) -> usize {
        5
    }

    fn fill(&self, t: f64, out: &mut DMatrix<C64>) {
        let s = self.schedule.at(t);
        let d = self.schedule.doppler1();
        out.fill(C64::new(0.0, 0.0));
        let set = |out: &mut DMatrix<C64>, i: usize, j: usize, v: f64| {
            out[(i, j)] = C64::new(v, 0.0);
            out[(j, i)] = C64::new(v, 0.0);
        };
        set(out, 0, 1, s.omega1);
        set(out, 1, 2, s.g1);
        set(out, 2, 3, s.g2);
        set(out, 3, 4, s.omega2);
        out[(1, 1)] = C64::new(d, 0.0);
        out[(2, 2)] = C64::new(d, 0.0);
        out[(3, 3)] = C64::new(d, 0.0);
        out[(4, 4)] = C64::new(s.delta, 0.0);
    }
}

/// Reference frame of the full Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Frame {
    /// Bare energies `omega` on the diagonal and laser phases `e^{±iφ(t)}`.
    Lab,
    /// Interaction picture with respect to the bare energies. The optical
    /// frequency cancels analytically, leaving only Doppler phases.
    Rotating,
}

#[derive(Debug, Clone, Copy)]
enum Coupling {
    Cavity(Atom),
    Laser(Atom),
}

#[derive(Debug, Clone, Copy)]
struct Term {
    row: usize,
    col: usize,
    coupling: Coupling,
}

/// Full two-atom plus cavity Hamiltonian over 18 product states with photon
/// number truncated at one.
#[derive(Debug, Clone)]
pub struct FullModel {
    schedule: PulseSchedule,
    frame: Frame,
    terms: Vec<Term>,
    bare: Vec<f64>,
}

fn with_level(label: StateLabel, atom: Atom, level: Level) -> StateLabel {
    let mut out = label;
    match atom {
        Atom::One => out.atom1 = level,
        Atom::Two => out.atom2 = level,
    }
    out
}

fn level_of(label: StateLabel, atom: Atom) -> Level {
    match atom {
        Atom::One => label.atom1,
        Atom::Two => label.atom2,
    }
}

impl FullModel {
    pub fn new(g: &GeometryParams, p: &PhysicalParams, frame: Frame) -> Self {
        let basis = Basis::Full;
        let mut terms = Vec::new();
        for col in 0..basis.dim() {
            let ket = basis.label(col);
            for atom in [Atom::One, Atom::Two] {
                // a |e⟩⟨g2|: absorbs the photon
                if level_of(ket, atom) == Level::G2 && ket.photons == 1 {
                    let mut out = with_level(ket, atom, Level::E);
                    out.photons = 0;
                    let row = basis.index_of(out).expect("in basis");
                    terms.push(Term { row, col, coupling: Coupling::Cavity(atom) });
                }
                // |g1⟩⟨e| driven by the laser
                if level_of(ket, atom) == Level::E {
                    let out = with_level(ket, atom, Level::G1);
                    let row = basis.index_of(out).expect("in basis");
                    terms.push(Term { row, col, coupling: Coupling::Laser(atom) });
                }
            }
        }
        let bare = match frame {
            Frame::Lab => (0..basis.dim())
                .map(|i| p.omega * basis.label(i).excitations() as f64)
                .collect(),
            Frame::Rotating => vec![0.0; basis.dim()],
        };
        FullModel { schedule: PulseSchedule::new(g, p), frame, terms, bare }
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn schedule(&self) -> &PulseSchedule {
        &self.schedule
    }

    fn laser_phase(&self, atom: Atom, t: f64) -> f64 {
        let doppler = doppler_phase(self.schedule.geometry(), atom, t);
        match self.frame {
            Frame::Lab => self.schedule.physics().omega * t + doppler,
            Frame::Rotating => doppler,
        }
    }

    pub fn matrix(&self, t: f64) -> DMatrix<C64> {
        let mut h = DMatrix::zeros(18, 18);
        self.fill(t, &mut h);
        h
    }
}

impl Hamiltonian for FullModel {
    fn dim(&self) -> usize {
        18
    }

    fn fill(&self, t: f64, out: &mut DMatrix<C64>) {
        let s = self.schedule.at(t);
        let laser1 = C64::from_polar(s.omega1, self.laser_phase(Atom::One, t));
        let laser2 = C64::from_polar(s.omega2, self.laser_phase(Atom::Two, t));
        out.fill(C64::new(0.0, 0.0));
        for (i, &e) in self.bare.iter().enumerate() {
            out[(i, i)] = C64::new(e, 0.0);
        }
        for term in &self.terms {
            let v = match term.coupling {
                Coupling::Cavity(Atom::One) => C64::new(s.g1, 0.0),
                Coupling::Cavity(Atom::Two) => C64::new(s.g2, 0.0),
                Coupling::Laser(Atom::One) => laser1,
                Coupling::Laser(Atom::Two) => laser2,
            };
            out[(term.row, term.col)] += v;
            out[(term.col, term.row)] += v.conj();
        }
    }
}

/// Lab-frame full Hamiltonian at pulse-clock time `t`.
pub fn full_hamiltonian(g: &GeometryParams, p: &PhysicalParams, t: f64) -> DMatrix<C64> {
    full_hamiltonian_in_frame(g, p, t, Frame::Lab)
}

pub fn full_hamiltonian_in_frame(
    g: &GeometryParams,
    p: &PhysicalParams,
    t: f64,
    frame: Frame,
) -> DMatrix<C64> {
    FullModel::new(g, p, frame).matrix(t)
}

/// Maps subspace amplitudes of a rotating-frame full state onto the frame of
/// the effective Hamiltonian. The two frames differ only by diagonal Doppler
/// phases, so populations are unchanged.
pub fn rotating_to_effective(g: &GeometryParams, t: f64, full: &[C64]) -> [C64; 5] {
    let d1 = doppler_phase(g, Atom::One, t);
    let d2 = doppler_phase(g, Atom::Two, t);
    let phases = [0.0, d1, d1, d1, d1 - d2];
    let idx = Basis::subspace_in_full();
    std::array::from_fn(|j| full[idx[j]] * C64::from_polar(1.0, phases[j]))
}
