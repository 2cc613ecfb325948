//! Dark frames, Wilczek-Zee connections, curvature, and holonomies.
//!
//! The computational chain: a [`ParameterLoop`] sweeps the control
//! coordinates of a [`GateParams`](crate::hamiltonians::GateParams); at each
//! point the Hamiltonian's kernel gives a [`DarkFrame`], gauge-aligned to
//! its predecessor; overlaps between successive frames yield the connection,
//! and their ordered product the holonomy. Where the connection commutes the
//! same unitary comes cheaper from the curvature flux through the enclosed
//! surface, and the two routes cross-check each other.

mod connection;
mod frame;
mod integrals;
mod loops;
mod targets;
mod transport;

pub use connection::{
    commutation_defect, connection_fd, connection_grid, curvature, curvature_at,
    ConnectionGrid, ConnectionSample, CurvatureField,
};
pub use frame::{analytic_dark_states, analytic_frame, dark_frame, polar_unitary, DarkFrame};
pub use integrals::{
    adaptive_simpson, alpha_integral, alpha_integral_over, alpha_integrand, solid_angle,
    solid_angle_quadrature, theta_for_solid_angle,
};
pub use loops::{ControlPoint, LoopSegment, ParameterLoop};
pub use targets::{u1_phase_gate, u2_rotation_gate, u3_two_qubit_phase};
pub use transport::{holonomy_path_ordered, holonomy_stokes, Holonomy, HolonomyMethod};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HolonomyError {
    #[error(
        "degeneracy broken at control point {point:?}: kernel dimension {found}, expected {expected}"
    )]
    DegeneracyBroken {
        expected: usize,
        found: usize,
        point: Vec<f64>,
    },

    #[error("path too coarse: successive frame overlap {overlap:.6} below {required}")]
    PathTooCoarse { overlap: f64, required: f64 },

    #[error(
        "connection components do not commute (defect {defect:.3e}); use the path-ordered method"
    )]
    NonCommutingConnection { defect: f64 },

    #[error("curvature grid too coarse: refinement changes result by {defect:.3e}")]
    GridTooCoarse { defect: f64 },

    #[error("path-ordered product needs at least {minimum} steps, got {given}")]
    TooFewSteps { given: usize, minimum: usize },

    #[error("loop is not closed: endpoints differ by {0:.3e}")]
    NotClosed(f64),

    #[error("target {0} outside the attainable range [{1}, {2}]")]
    TargetOutOfRange(f64, f64, f64),

    #[error("state lies outside the dark subspace (weight {weight:.6})")]
    NotInDarkSubspace { weight: f64 },

    #[error("loop and gate disagree on coordinate count: {0} vs {1}")]
    CoordinateMismatch(usize, usize),

    #[error(transparent)]
    Quantum(#[from] crate::quantum::QuantumError),

    #[error(transparent)]
    Hamiltonian(#[from] crate::hamiltonians::HamiltonianError),
}

pub type Result<T> = std::result::Result<T, HolonomyError>;
