use ndarray::Array2;

use crate::quantum::{BasisLabels, HermitianOperator, C64};

use super::{HamiltonianError, Result};

/// Two coupled dots: bare exciton energy `E`, biexcitonic shift `δ` (the
/// two-exciton level sits at `2E + δ`), per-dot Rabi amplitudes, and the
/// laser frequency `ω`, all in fs⁻¹.
///
/// The builders assume the two-photon resonance `ω = E + δ/2`; construction
/// rejects anything else.
#[derive(Clone, Debug)]
pub struct TwoDotParams {
    pub exciton_energy: f64,
    pub biexciton_shift: f64,
    pub rabi_1: f64,
    pub rabi_2: f64,
    pub laser_frequency: f64,
}

impl TwoDotParams {
    pub fn new(
        exciton_energy: f64,
        biexciton_shift: f64,
        rabi_1: f64,
        rabi_2: f64,
        laser_frequency: f64,
    ) -> Result<Self> {
        if !(biexciton_shift > 0.0) {
            return Err(HamiltonianError::NonPositiveShift(biexciton_shift));
        }
        let resonant = exciton_energy + biexciton_shift / 2.0;
        if (laser_frequency - resonant).abs() > 1e-9 * resonant.abs().max(1.0) {
            return Err(HamiltonianError::OffResonance {
                omega: laser_frequency,
                resonant,
            });
        }
        Ok(Self {
            exciton_energy,
            biexciton_shift,
            rabi_1,
            rabi_2,
            laser_frequency,
        })
    }

    /// Resonant preset: `ω` fixed to `E + δ/2`.
    pub fn resonant(exciton_energy: f64, biexciton_shift: f64, rabi_1: f64, rabi_2: f64) -> Result<Self> {
        Self::new(
            exciton_energy,
            biexciton_shift,
            rabi_1,
            rabi_2,
            exciton_energy + biexciton_shift / 2.0,
        )
    }

    pub fn labels() -> BasisLabels {
        BasisLabels::new(["GG", "EG", "GE", "EE"]).expect("static labels")
    }

    /// Conservative bound on `max_t ‖H(t)‖` for step-size selection.
    pub fn norm_bound(&self) -> f64 {
        2.0 * self.exciton_energy
            + self.biexciton_shift
            + self.rabi_1.abs()
            + self.rabi_2.abs()
    }

    /// Lab-frame Hamiltonian at time `t` on basis `|GG⟩,|EG⟩,|GE⟩,|EE⟩`.
    ///
    /// Diagonal `diag(0, E, E, 2E+δ)`; each dot's transition is driven by
    /// `−(Ω̃ᵢ/2)·e^{−iωt}` on the raising entry plus conjugate (Rabi
    /// frequency convention: resonant population oscillates at Ω̃ᵢ).
    pub fn hamiltonian_at(&self, t: f64) -> Result<HermitianOperator> {
        self.hamiltonian_scaled(t, 1.0)
    }

    /// Same as [`hamiltonian_at`](Self::hamiltonian_at) with the drive
    /// amplitudes scaled by `envelope` (smooth pulse turn-on).
    pub fn hamiltonian_scaled(&self, t: f64, envelope: f64) -> Result<HermitianOperator> {
        if t < 0.0 {
            return Err(HamiltonianError::NegativeTime(t));
        }
        let mut m = Array2::zeros((4, 4));
        self.fill_matrix(t, envelope, &mut m);
        Ok(HermitianOperator::new(Self::labels(), m)?)
    }

    /// Allocation-free fill for the integrator hot path.
    pub fn fill_matrix(&self, t: f64, envelope: f64, m: &mut Array2<C64>) {
        let e = self.exciton_energy;
        let d = self.biexciton_shift;
        m.fill(C64::ZERO);
        m[[1, 1]] = C64::new(e, 0.0);
        m[[2, 2]] = C64::new(e, 0.0);
        m[[3, 3]] = C64::new(2.0 * e + d, 0.0);
        let phase = C64::from_polar(1.0, -self.laser_frequency * t);
        let g1 = phase * (-0.5 * self.rabi_1 * envelope);
        let g2 = phase * (-0.5 * self.rabi_2 * envelope);
        // dot 1 flips GG↔EG and GE↔EE; dot 2 flips GG↔GE and EG↔EE
        m[[1, 0]] = g1;
        m[[3, 2]] = g1;
        m[[2, 0]] = g2;
        m[[3, 1]] = g2;
        m[[0, 1]] = g1.conj();
        m[[2, 3]] = g1.conj();
        m[[0, 2]] = g2.conj();
        m[[1, 3]] = g2.conj();
    }
}

/// Effective two-photon Rabi frequency `2·Ω̃₁·Ω̃₂/δ` (ℏ = 1): the angular
/// frequency of the `|GG⟩ ↔ |EE⟩` population oscillation at resonance.
pub fn effective_two_photon_rabi(rabi_1: f64, rabi_2: f64, delta: f64) -> Result<f64> {
    if !(delta > 0.0) {
        return Err(HamiltonianError::NonPositiveShift(delta));
    }
    Ok(2.0 * rabi_1 * rabi_2 / delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::HBAR_EV_FS;

    fn params() -> TwoDotParams {
        TwoDotParams::resonant(1.5 / HBAR_EV_FS, 0.5, 0.02, 0.02).unwrap()
    }

    #[test]
    fn undriven_hamiltonian_is_diagonal() {
        let p = TwoDotParams::resonant(2.28, 0.5, 0.0, 0.0).unwrap();
        let h = p.hamiltonian_at(3.7).unwrap();
        let m = h.matrix();
        assert_eq!(m[[0, 0]], C64::ZERO);
        assert_eq!(m[[1, 1]], C64::new(2.28, 0.0));
        assert_eq!(m[[2, 2]], C64::new(2.28, 0.0));
        assert!((m[[3, 3]].re - (2.0 * 2.28 + 0.5)).abs() < 1e-15);
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(m[[i, j]], C64::ZERO);
                }
            }
        }
    }

    #[test]
    fn off_resonant_laser_rejected() {
        let e = 2.28;
        let err = TwoDotParams::new(e, 0.5, 0.02, 0.02, e + 0.5 / 4.0);
        assert!(matches!(err, Err(HamiltonianError::OffResonance { .. })));
    }

    #[test]
    fn single_flip_couplings_at_t0() {
        let p = params();
        let h = p.hamiltonian_at(0.0).unwrap();
        let m = h.matrix();
        // half-amplitude Rabi convention on the raising entries
        assert_eq!(m[[1, 0]], C64::new(-0.01, 0.0));
        assert_eq!(m[[2, 0]], C64::new(-0.01, 0.0));
        assert_eq!(m[[3, 1]], C64::new(-0.01, 0.0));
        assert_eq!(m[[3, 2]], C64::new(-0.01, 0.0));
        // no direct GG↔EE coupling
        assert_eq!(m[[3, 0]], C64::ZERO);
    }

    #[test]
    fn hermitian_at_generic_time() {
        let p = params();
        let h = p.hamiltonian_at(123.456).unwrap();
        assert!(h.hermiticity_defect() < 1e-15);
    }

    #[test]
    fn effective_rabi_value() {
        assert!((effective_two_photon_rabi(0.02, 0.02, 0.5).unwrap() - 0.0016).abs() < 1e-18);
        assert_eq!(effective_two_photon_rabi(0.3, 0.0, 0.5).unwrap(), 0.0);
        assert!(effective_two_photon_rabi(0.02, 0.02, 0.0).is_err());
        assert!(effective_two_photon_rabi(0.02, 0.02, -0.1).is_err());
    }

    #[test]
    fn delta_over_omega_25_preset() {
        let omega = 0.02;
        let delta = 25.0 * omega;
        assert!((effective_two_photon_rabi(omega, omega, delta).unwrap() - 0.0016).abs() < 1e-18);
    }

    #[test]
    fn negative_time_rejected() {
        assert!(params().hamiltonian_at(-1.0).is_err());
    }
}
