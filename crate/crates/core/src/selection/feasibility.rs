use super::bloch::Band;
use super::dipole::{probability_for, Polarization};
use super::{Result, SelectionError};

/// Which excitation geometry the laser uses.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExcitationGeometry {
    /// circular (σ±) light propagating along the growth axis
    ZPropagatingCircular,
    /// z-polarized light propagating in the plane; HH transitions forbidden
    InPlaneZPolarized,
}

/// Relative probabilities to excite each hole species, with exact ratios.
#[derive(Clone, Debug)]
pub struct RatioTable {
    pub geometry: ExcitationGeometry,
    pub p_hh: f64,
    pub p_lh: f64,
    pub p_g7: f64,
    pub hh_over_lh: Option<f64>,
    pub hh_over_g7: Option<f64>,
    pub lh_over_g7: Option<f64>,
}

/// Excitation-probability ratios between HH, LH, and Γ₇ electrons at equal
/// field strength, derived from the tabulated dipole elements.
pub fn excitation_ratios(geometry: ExcitationGeometry) -> RatioTable {
    let pol = match geometry {
        ExcitationGeometry::ZPropagatingCircular => Polarization::sigma_minus(),
        ExcitationGeometry::InPlaneZPolarized => Polarization::sigma_zero(),
    };
    // per-row probability is branch-independent; take the row each
    // polarization actually drives
    let p_hh = probability_for(Band::Gamma8Hh, 3, &pol).as_f64();
    let p_lh = probability_for(Band::Gamma8Lh, 1, &pol).as_f64();
    let p_g7 = probability_for(Band::Gamma7, 1, &pol).as_f64();
    let ratio = |a: f64, b: f64| if b > 0.0 { Some(a / b) } else { None };
    RatioTable {
        geometry,
        p_hh,
        p_lh,
        p_g7,
        hh_over_lh: ratio(p_hh, p_lh),
        hh_over_g7: ratio(p_hh, p_g7),
        lh_over_g7: ratio(p_lh, p_g7),
    }
}

/// Suppression counts as "≪" only with at least this margin.
pub const SUPPRESSION_FACTOR: f64 = 10.0;

#[derive(Clone, Debug)]
pub struct FeasibilityReport {
    pub bandwidth_ev: f64,
    pub gap_lh_hh_ev: f64,
    pub gap_g7_lh_ev: f64,
    /// strict `bandwidth < gap_LH_HH`: HH and LH separately addressable
    pub hh_lh_separable: bool,
    /// `gap_Γ7_LH / bandwidth ≥ 10`: split-off transitions suppressed
    pub gamma7_suppressed: bool,
    /// bandwidth spans the HH-LH gap; the mixed three-level scheme applies
    pub mixed_regime: bool,
}

/// Checks whether a laser of the given bandwidth can address HH and LH
/// excitons separately while leaving Γ₇ unexcited. All energies in eV.
pub fn bandwidth_feasibility(
    bandwidth_ev: f64,
    gap_lh_hh_ev: f64,
    gap_g7_lh_ev: f64,
) -> Result<FeasibilityReport> {
    for (name, v) in [
        ("bandwidth", bandwidth_ev),
        ("gap_LH_HH", gap_lh_hh_ev),
        ("gap_Γ7_LH", gap_g7_lh_ev),
    ] {
        if !(v > 0.0) {
            return Err(SelectionError::NonPositiveEnergy(name, v));
        }
    }
    let hh_lh_separable = bandwidth_ev < gap_lh_hh_ev;
    Ok(FeasibilityReport {
        bandwidth_ev,
        gap_lh_hh_ev,
        gap_g7_lh_ev,
        hh_lh_separable,
        gamma7_suppressed: gap_g7_lh_ev / bandwidth_ev >= SUPPRESSION_FACTOR,
        mixed_regime: !hh_lh_separable,
    })
}
