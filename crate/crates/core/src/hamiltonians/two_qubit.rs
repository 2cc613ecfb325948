use ndarray::Array2;

use crate::quantum::{BasisLabels, HermitianOperator, C64};

use super::{HamiltonianError, Result};

/// Symmetric effective Rabi set for the two-photon two-qubit process.
///
/// `j` names the second polarization in play (`0` for the phase gate, `-`
/// for the entangling gate); the mixed coupling `Ω^{+j}` drives both
/// `|+j⟩` and `|j+⟩` with the same amplitude, which is what makes the set
/// symmetric.
#[derive(Clone, Debug)]
pub struct EffectiveTwoQubitRabi {
    pub omega_pp: C64,
    pub omega_jj: C64,
    pub omega_pj: C64,
    pub j_label: char,
}

impl EffectiveTwoQubitRabi {
    pub fn new(omega_pp: C64, omega_jj: C64, omega_pj: C64, j_label: char) -> Self {
        Self {
            omega_pp,
            omega_jj,
            omega_pj,
            j_label,
        }
    }

    /// `Ω² = |Ω^{++}|² + |Ω^{jj}|²` (the logical-pair normalization).
    pub fn omega_sqr(&self) -> f64 {
        self.omega_pp.norm_sqr() + self.omega_jj.norm_sqr()
    }

    pub fn labels(&self) -> BasisLabels {
        let j = self.j_label;
        BasisLabels::new([
            "GG".to_string(),
            "++".to_string(),
            format!("{j}{j}"),
            format!("+{j}"),
            format!("{j}+"),
        ])
        .expect("distinct labels")
    }
}

/// Effective two-photon Hamiltonian
/// `H = −(2ℏ²/δ)[(Ω^{++})*|++⟩ + (Ω^{jj})*|jj⟩ + (Ω^{+j})*(|+j⟩+|j+⟩)]⟨GG| + h.c.`
/// on basis `|GG⟩,|++⟩,|jj⟩,|+j⟩,|j+⟩`.
///
/// Rank 2: `|GG⟩` couples to a single bright combination of the four
/// biexciton states, leaving a three-dimensional dark space. The four
/// remaining two-exciton product states are decoupled spectators and are not
/// instantiated.
pub fn build_effective_two_qubit(
    rabi: &EffectiveTwoQubitRabi,
    delta: f64,
) -> Result<HermitianOperator> {
    if !(delta > 0.0) {
        return Err(HamiltonianError::NonPositiveShift(delta));
    }
    for (c, name) in [
        (rabi.omega_pp, "Ω^(++)"),
        (rabi.omega_jj, "Ω^(jj)"),
        (rabi.omega_pj, "Ω^(+j)"),
    ] {
        if !c.re.is_finite() || !c.im.is_finite() {
            return Err(HamiltonianError::NonFiniteRabi(name));
        }
    }
    let pref = -2.0 / delta;
    let mut m: Array2<C64> = Array2::zeros((5, 5));
    let couplings = [rabi.omega_pp, rabi.omega_jj, rabi.omega_pj, rabi.omega_pj];
    for (k, w) in couplings.iter().enumerate() {
        m[[k + 1, 0]] = w.conj() * pref;
        m[[0, k + 1]] = *w * pref;
    }
    Ok(HermitianOperator::new(rabi.labels(), m)?)
}
