//! Builders for every driven Hamiltonian used by the gate constructions:
//! the generic four-level lambda system, its exciton realization, the
//! coupled two-dot system with the biexcitonic shift, and the effective
//! two-photon two-qubit Hamiltonian.

mod gates;
mod lambda;
mod two_dot;
mod two_qubit;

pub use gates::{GateKind, GateParams};
pub use lambda::{build_exciton_lambda, build_lambda, RabiSet};
pub use two_dot::{effective_two_photon_rabi, TwoDotParams};
pub use two_qubit::{build_effective_two_qubit, EffectiveTwoQubitRabi};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HamiltonianError {
    #[error("rabi frequency {0} is not finite")]
    NonFiniteRabi(&'static str),

    #[error("biexcitonic shift must be positive, got {0}")]
    NonPositiveShift(f64),

    #[error(
        "laser frequency {omega} is off the two-photon resonance E + δ/2 = {resonant}"
    )]
    OffResonance { omega: f64, resonant: f64 },

    #[error("rabi set must be symmetric (Ω^(ij) = Ω^(ji))")]
    AsymmetricRabi,

    #[error("time must be nonnegative, got {0}")]
    NegativeTime(f64),

    #[error(transparent)]
    Quantum(#[from] crate::quantum::QuantumError),
}

pub type Result<T> = std::result::Result<T, HamiltonianError>;
