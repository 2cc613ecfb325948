//! Simulation library for holonomic quantum gates on semiconductor exciton
//! qubits.
//!
//! The crate is organized around the pipeline used throughout:
//!
//! 1. [`selection`] encodes the zinc-blende Bloch functions and dipole
//!    selection rules that determine which exciton transitions a laser
//!    polarization can drive.
//! 2. [`hamiltonians`] builds the driven few-level Hamiltonians (the generic
//!    lambda system, the light-hole exciton system, the coupled two-dot
//!    system, and the effective two-photon two-qubit system).
//! 3. [`holonomy`] computes dark frames, Wilczek-Zee connections, curvature,
//!    and the holonomic unitaries, both by Stokes integration and by
//!    path-ordered products over discretized loops.
//! 4. [`dynamics`] integrates the time-dependent Schrödinger equation along
//!    adiabatic schedules and cross-validates every holonomy against direct
//!    time evolution.
//!
//! Units: `ℏ = 1`, time in femtoseconds, energies and angular frequencies in
//! `fs⁻¹`. See [`quantum::HBAR_EV_FS`] for converting the electron-volt
//! figures quoted for real quantum dots.

pub mod dynamics;
pub mod hamiltonians;
pub mod holonomy;
pub mod quantum;
pub mod selection;

pub use quantum::{C64, HermitianOperator, StateVector, UnitaryMatrix};
