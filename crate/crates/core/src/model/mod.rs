//! Physical configuration, pulse synthesis and Hamiltonian builders.

mod basis;
mod hamiltonian;
mod params;
mod pulses;

pub use basis::{
    Basis, Level, StateLabel, EG2_0, G1G2_0, G2E_0, G2G1_0, G2G2_0, G2G2_1, SUBSPACE_LABELS,
};
pub use hamiltonian::{
    chain_hamiltonian, effective_hamiltonian, full_hamiltonian, full_hamiltonian_in_frame,
    rotating_to_effective,
    EffectiveModel, Frame, FullModel,
};
pub use params::{GeometryParams, ParamError, PhysicalParams};
pub use pulses::{
    atom_position, cavity_coupling, doppler_phase, four_photon_detuning, laser_coupling,
    optical_phase, pulses_at, rwa_check, Atom, DetuningReport, PulseSchedule, PulseSnapshot,
    RwaReport, DETUNING_GUARD_RATIO, RWA_RATIO_LIMIT,
};
