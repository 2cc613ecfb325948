//! Dense complex linear algebra on small (dim ≤ 16) Hilbert spaces.
//!
//! Everything here is a plain value type over `ndarray` storage. Operations
//! are pure; nothing is parallelized at this layer.

mod eigen;
mod expm;
mod operator;
mod state;

pub use eigen::{eigensystem, eigh, Eigenspace};
pub use expm::{expm, expm_antihermitian};
pub use operator::{HermitianOperator, UnitaryMatrix};
pub use state::{fidelity, BasisLabels, StateVector};

use thiserror::Error;

pub type C64 = num_complex::Complex64;

/// ℏ in eV·fs, for translating quoted electron-volt energies into the
/// crate's fs⁻¹ angular-frequency units.
pub const HBAR_EV_FS: f64 = 0.6582119569;

/// Default absolute tolerance (fs⁻¹) for grouping near-degenerate
/// eigenvalues. Dark-state energies are exactly zero analytically; this only
/// absorbs floating-point noise.
pub const DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum QuantumError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),

    #[error("not Hermitian: max |A - A^†| entry = {0:.3e} exceeds {1:.3e}")]
    NotHermitian(f64, f64),

    #[error("not unitary: ||U^†U - I||_F = {0:.3e} exceeds {1:.3e}")]
    NotUnitary(f64, f64),

    #[error("non-finite entry encountered")]
    NonFinite,

    #[error("cannot normalize a zero vector")]
    ZeroVector,

    #[error("basis labels must be unique, `{0}` repeats")]
    DuplicateLabel(String),

    #[error("{0} labels supplied for dimension {1}")]
    LabelCount(usize, usize),

    #[error("degeneracy tolerance must be positive, got {0}")]
    BadTolerance(f64),

    #[error("jacobi eigensolver failed to converge after {0} sweeps")]
    NoConvergence(usize),
}

pub type Result<T> = std::result::Result<T, QuantumError>;
