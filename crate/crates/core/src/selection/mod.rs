//! Optical selection rules for interband transitions in a zinc-blende
//! quantum dot.
//!
//! The valence states (heavy-hole and light-hole Γ₈ quadruplet, split-off Γ₇
//! doublet) and the Γ₆ conduction states are expanded over the zone-center
//! orbital/spin basis `{S, X, Y, Z} × {↑, ↓}`. Dipole amplitudes follow from
//! the single nonzero reduced element `⟨S|x|X⟩ = ⟨S|y|Y⟩ = ⟨S|z|Z⟩ = 1`
//! together with spin orthonormality.
//!
//! Amplitude magnitudes squared are tracked as exact integer fractions in
//! units of `|⟨S|x|X⟩|²` so that excitation-probability ratios come out
//! exact, not merely close.

mod bloch;
mod dipole;
mod feasibility;

pub use bloch::{table_rows, Band, BlochState, ExpansionTerm, Orbital, Spin, TABLE_ROWS};
pub use dipole::{
    transition_table, Ratio,
    allowed_transitions, dipole_amplitude, ExcitonLabel, Polarization, PolarizationKind,
    TransitionAmplitude,
};
pub use feasibility::{
    bandwidth_feasibility, excitation_ratios, ExcitationGeometry, FeasibilityReport, RatioTable,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SelectionError {
    #[error("intraband dipole not modeled: both states in band {0:?}")]
    SameBandPair(Band),

    #[error("transition requires one Γ6 state and one valence state")]
    NotInterband,

    #[error("energy must be positive: {0} = {1}")]
    NonPositiveEnergy(&'static str, f64),
}

pub type Result<T> = std::result::Result<T, SelectionError>;
