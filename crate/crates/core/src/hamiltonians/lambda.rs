use ndarray::Array2;

use crate::quantum::{BasisLabels, HermitianOperator, C64};

use super::{HamiltonianError, Result};

/// Three complex Rabi frequencies (fs⁻¹), each bound to the lower-level
/// transition named by its label.
#[derive(Clone, Debug)]
pub struct RabiSet {
    pub couplings: [C64; 3],
    pub labels: [&'static str; 3],
}

impl RabiSet {
    /// Generic lambda-system drive: `Ω₀, Ω₁, Ω_a` on levels `|0⟩, |1⟩, |a⟩`.
    pub fn lambda(omega_0: C64, omega_1: C64, omega_a: C64) -> Self {
        Self {
            couplings: [omega_0, omega_1, omega_a],
            labels: ["0", "1", "a"],
        }
    }

    /// Exciton drive: `Ω₊, Ω₋, Ω₀` creating `E⁺, E⁻, E⁰`.
    pub fn exciton(omega_plus: C64, omega_minus: C64, omega_zero: C64) -> Self {
        Self {
            couplings: [omega_plus, omega_minus, omega_zero],
            labels: ["E+", "E-", "E0"],
        }
    }

    /// `Ω = √(Σ|Ωᵢ|²)`, the bright-state energy scale.
    pub fn total(&self) -> f64 {
        self.couplings
            .iter()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    fn validate(&self) -> Result<()> {
        for (c, l) in self.couplings.iter().zip(self.labels.iter()) {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(HamiltonianError::NonFiniteRabi(l));
            }
        }
        Ok(())
    }
}

/// `H = ℏ|e⟩(Ω₀⟨0| + Ω₁⟨1| + Ω_a⟨a|) + h.c.` on basis `|e⟩,|0⟩,|1⟩,|a⟩`.
///
/// Rank ≤ 2 star coupling; spectrum `{−Ω, 0, 0, +Ω}`.
pub fn build_lambda(rabi: &RabiSet) -> Result<HermitianOperator> {
    rabi.validate()?;
    let labels = BasisLabels::new(["e", rabi.labels[0], rabi.labels[1], rabi.labels[2]])?;
    let mut m: Array2<C64> = Array2::zeros((4, 4));
    for (k, w) in rabi.couplings.iter().enumerate() {
        m[[0, k + 1]] = *w;
        m[[k + 1, 0]] = w.conj();
    }
    Ok(HermitianOperator::new(labels, m)?)
}

/// `H = −ℏ(Ω₊|E⁺⟩ + Ω₋|E⁻⟩ + Ω₀|E⁰⟩)⟨G| + h.c.` on basis
/// `|G⟩,|E⁺⟩,|E⁻⟩,|E⁰⟩`.
///
/// Same star structure as [`build_lambda`] with the shared level at the
/// bottom and an overall sign flip; spectrum and dark space are identical.
pub fn build_exciton_lambda(rabi: &RabiSet) -> Result<HermitianOperator> {
    rabi.validate()?;
    let labels = BasisLabels::new(["G", rabi.labels[0], rabi.labels[1], rabi.labels[2]])?;
    let mut m: Array2<C64> = Array2::zeros((4, 4));
    for (k, w) in rabi.couplings.iter().enumerate() {
        m[[k + 1, 0]] = -w;
        m[[0, k + 1]] = -w.conj();
    }
    Ok(HermitianOperator::new(labels, m)?)
}
