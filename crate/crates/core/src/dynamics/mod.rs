//! Time-domain Schrödinger integration of the gate Hamiltonians along
//! adiabatic schedules, and the validation harness that checks every
//! holonomy against direct time evolution.

mod integrator;
mod phase;
mod run;
mod schedule;
mod two_photon;

pub use integrator::{integrate, IntegrationOptions, SimulationTrace};
pub use phase::{dynamical_phase_report, PhaseReport};
pub use run::{
    adiabaticity_scan, gate_preset, run_gate, AdiabaticityScan, GatePreset, GateRun, ScanRow,
};
pub use schedule::{AdiabaticSchedule, TimeMap};
pub use two_photon::{two_photon_validation, TwoPhotonRun};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum DynamicsError {
    #[error("step size {dt} too coarse for ‖H‖ ≈ {norm:.3} (dt·‖H‖ must stay ≤ 0.05)")]
    StepTooCoarse { dt: f64, norm: f64 },

    #[error("norm drifted by {drift:.3e} (limit {limit:.0e}); reduce the step size")]
    NormDrift { drift: f64, limit: f64 },

    #[error("initial state outside the dark subspace (leakage {leakage:.3e})")]
    InitialStateNotDark { leakage: f64 },

    #[error("fewer than {needed} oscillation crossings within T = {t_total} fs; extend the run")]
    ExtendT { needed: usize, t_total: f64 },

    #[error("duration and step must be positive: T = {t_total}, dt = {dt}")]
    BadTiming { t_total: f64, dt: f64 },

    #[error("adiabaticity scan needs Ω·T ≥ 1, got {0}")]
    BadOmegaT(f64),

    #[error(transparent)]
    Quantum(#[from] crate::quantum::QuantumError),

    #[error(transparent)]
    Hamiltonian(#[from] crate::hamiltonians::HamiltonianError),

    #[error(transparent)]
    Holonomy(#[from] crate::holonomy::HolonomyError),
}

pub type Result<T> = std::result::Result<T, DynamicsError>;
