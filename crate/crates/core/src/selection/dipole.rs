use crate::quantum::C64;

use super::bloch::{find_row, table_rows, Band, BlochState, Orbital, Spin};
use super::{Result, SelectionError};

/// Exact nonnegative rational, reduced, for probability bookkeeping.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub const ZERO: Ratio = Ratio { num: 0, den: 1 };

    fn new(num: i64, den: i64) -> Self {
        assert!(den > 0);
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
        Ratio {
            num: num / g,
            den: den / g,
        }
    }

    fn mul(self, other: Ratio) -> Ratio {
        Ratio::new(self.num * other.num, self.den * other.den)
    }

    fn add_signed(self, sign: i64, other: Ratio) -> Ratio {
        Ratio::new(
            self.num * other.den + sign * other.num * self.den,
            self.den * other.den,
        )
    }

    /// Exact square root; panics unless both parts are perfect squares
    /// (guaranteed for products of matched-radical contributions).
    fn sqrt_exact(self) -> Ratio {
        let ns = isqrt_exact(self.num);
        let ds = isqrt_exact(self.den);
        match (ns, ds) {
            (Some(n), Some(d)) => Ratio::new(n, d),
            _ => panic!("ratio {}/{} has no exact square root", self.num, self.den),
        }
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn isqrt_exact(v: i64) -> Option<i64> {
    if v < 0 {
        return None;
    }
    let r = (v as f64).sqrt().round() as i64;
    for c in [r - 1, r, r + 1] {
        if c >= 0 && c * c == v {
            return Some(c);
        }
    }
    None
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum PolarizationKind {
    /// `ε_x − i ε_y` (drives `X + iY` components)
    SigmaMinus,
    /// `ε_x + i ε_y` (drives `X − iY` components)
    SigmaPlus,
    /// linear along the growth axis
    SigmaZero,
}

/// A unit polarization vector with its symbolic kind.
#[derive(Clone, Debug)]
pub struct Polarization {
    pub kind: PolarizationKind,
    vector: [C64; 3],
    /// exact `|ε_c|²` per Cartesian component
    weights: [Ratio; 3],
}

impl Polarization {
    pub fn new(kind: PolarizationKind) -> Self {
        let s2 = 1.0 / 2f64.sqrt();
        let (vector, weights) = match kind {
            PolarizationKind::SigmaMinus => (
                [C64::new(s2, 0.0), C64::new(0.0, -s2), C64::ZERO],
                [Ratio::new(1, 2), Ratio::new(1, 2), Ratio::ZERO],
            ),
            PolarizationKind::SigmaPlus => (
                [C64::new(s2, 0.0), C64::new(0.0, s2), C64::ZERO],
                [Ratio::new(1, 2), Ratio::new(1, 2), Ratio::ZERO],
            ),
            PolarizationKind::SigmaZero => (
                [C64::ZERO, C64::ZERO, C64::new(1.0, 0.0)],
                [Ratio::ZERO, Ratio::ZERO, Ratio::new(1, 1)],
            ),
        };
        Self {
            kind,
            vector,
            weights,
        }
    }

    pub fn sigma_minus() -> Self {
        Self::new(PolarizationKind::SigmaMinus)
    }

    pub fn sigma_plus() -> Self {
        Self::new(PolarizationKind::SigmaPlus)
    }

    pub fn sigma_zero() -> Self {
        Self::new(PolarizationKind::SigmaZero)
    }

    pub fn all() -> [Self; 3] {
        [Self::sigma_minus(), Self::sigma_plus(), Self::sigma_zero()]
    }

    pub fn vector(&self) -> &[C64; 3] {
        &self.vector
    }

    pub fn norm(&self) -> f64 {
        self.vector.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn symbol(&self) -> &'static str {
        match self.kind {
            PolarizationKind::SigmaMinus => "σ-",
            PolarizationKind::SigmaPlus => "σ+",
            PolarizationKind::SigmaZero => "σ0",
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExcitonLabel {
    EPlus,
    EMinus,
    EZero,
}

impl ExcitonLabel {
    pub fn symbol(self) -> &'static str {
        match self {
            ExcitonLabel::EPlus => "E+",
            ExcitonLabel::EMinus => "E-",
            ExcitonLabel::EZero => "E0",
        }
    }
}

/// A dipole transition amplitude in units of the reduced element `⟨S|x|X⟩`.
#[derive(Clone, Debug)]
pub struct TransitionAmplitude {
    pub initial: BlochState,
    pub final_state: BlochState,
    pub polarization: Polarization,
    pub amplitude: C64,
    /// exact `|amplitude|²`
    pub probability: Ratio,
}

impl TransitionAmplitude {
    pub fn is_forbidden(&self) -> bool {
        self.probability == Ratio::ZERO
    }

    /// Angular momentum transferred to the pair: `m_c − m_v` in units of ℏ.
    pub fn exciton_label(&self) -> ExcitonLabel {
        let (mc2, mv2) = if self.final_state.band == Band::Gamma6 {
            (self.final_state.j_z2, self.initial.j_z2)
        } else {
            (self.initial.j_z2, self.final_state.j_z2)
        };
        match (mc2 - mv2) / 2 {
            1 => ExcitonLabel::EPlus,
            -1 => ExcitonLabel::EMinus,
            0 => ExcitonLabel::EZero,
            other => unreachable!("exciton angular momentum {other}"),
        }
    }

    /// `Ω_{n,m}` subscript: conduction spin, valence spin (doubled halves).
    pub fn rabi_label(&self) -> String {
        let (c, v) = if self.final_state.band == Band::Gamma6 {
            (&self.final_state, &self.initial)
        } else {
            (&self.initial, &self.final_state)
        };
        let half = |x: i32| format!("{}{}/2", if x < 0 { "-" } else { "" }, x.abs());
        format!("Ω_{{{},{}}}", half(c.j_z2), half(v.j_z2))
    }
}

/// `⟨f|ε·r|i⟩` expanded over the orbital/spin basis with unit reduced
/// elements and spin orthonormality.
///
/// One state must be Γ6, the other a valence row (either direction).
pub fn dipole_amplitude(
    initial: &BlochState,
    final_state: &BlochState,
    pol: &Polarization,
) -> Result<TransitionAmplitude> {
    if initial.band == final_state.band {
        return Err(SelectionError::SameBandPair(initial.band));
    }
    if initial.band.is_valence() == final_state.band.is_valence() {
        return Err(SelectionError::NotInterband);
    }

    let mut amplitude = C64::ZERO;
    // contributions as i^k · √r with r exact
    let mut contribs: Vec<(u8, Ratio)> = Vec::new();

    for tf in &final_state.expansion {
        for ti in &initial.expansion {
            if tf.spin != ti.spin {
                continue; // SSR: ⟨↑|↓⟩ = 0
            }
            for (c_idx, axis) in [Orbital::X, Orbital::Y, Orbital::Z].iter().enumerate() {
                let coupled = (tf.orbital == Orbital::S && ti.orbital == *axis)
                    || (ti.orbital == Orbital::S && tf.orbital == *axis);
                if !coupled {
                    continue;
                }
                let eps = pol.vector[c_idx];
                if eps == C64::ZERO {
                    continue;
                }
                let contrib = tf.coeff.conj() * ti.coeff * eps;
                amplitude += contrib;
                let r = Ratio::new(tf.weight_num, tf.weight_den)
                    .mul(Ratio::new(ti.weight_num, ti.weight_den))
                    .mul(pol.weights[c_idx]);
                contribs.push((quarter_phase(contrib), r));
            }
        }
    }

    // |Σ i^k √r|² expands into pairwise cross terms; every product r_a·r_b
    // within one amplitude has an exact rational root (matched radicals in
    // the tabulated rows), so the probability is an exact rational.
    let mut probability = Ratio::ZERO;
    for (a, &(ka, ra)) in contribs.iter().enumerate() {
        for (b, &(kb, rb)) in contribs.iter().enumerate().skip(a) {
            let cross = ra.mul(rb).sqrt_exact();
            let factor = match (4 + ka as i64 - kb as i64) % 4 {
                0 => 1i64,
                2 => -1,
                _ => 0,
            };
            let mult = if a == b { 1 } else { 2 };
            probability = probability.add_signed(factor * mult, cross);
        }
    }

    Ok(TransitionAmplitude {
        initial: initial.clone(),
        final_state: final_state.clone(),
        polarization: pol.clone(),
        amplitude,
        probability,
    })
}

/// Phase quadrant of a contribution known to lie on a quarter-turn axis.
fn quarter_phase(z: C64) -> u8 {
    let (re, im) = (z.re, z.im);
    if re.abs() >= im.abs() {
        if re >= 0.0 {
            0
        } else {
            2
        }
    } else if im >= 0.0 {
        1
    } else {
        3
    }
}

/// All dipole-allowed valence→Γ6 transitions for the given bands under one
/// polarization, labeled by the exciton they create.
pub fn allowed_transitions(bands: &[Band], pol: &Polarization) -> Vec<TransitionAmplitude> {
    let rows = table_rows();
    let conduction: Vec<&BlochState> = rows.iter().filter(|r| r.band == Band::Gamma6).collect();
    let mut out = Vec::new();
    for v in rows.iter().filter(|r| bands.contains(&r.band)) {
        for c in &conduction {
            let t = dipole_amplitude(v, c, pol).expect("interband pair");
            if !t.is_forbidden() {
                out.push(t);
            }
        }
    }
    out
}

/// The six HH+LH rows (or any band subset) over all three polarizations, in
/// the tabulated order: HH σ∓ pair first, then LH σ± pair, then the two LH
/// σ⁰ rows.
pub fn transition_table(bands: &[Band]) -> Vec<TransitionAmplitude> {
    let mut out = Vec::new();
    for &band in bands {
        let pols: &[Polarization] = match band {
            Band::Gamma8Hh => &[Polarization::sigma_minus(), Polarization::sigma_plus()],
            _ => &[
                Polarization::sigma_plus(),
                Polarization::sigma_minus(),
                Polarization::sigma_zero(),
            ],
        };
        for pol in pols {
            for t in allowed_transitions(&[band], pol) {
                out.push(t);
            }
        }
    }
    out
}

pub(crate) fn probability_for(band: Band, j_z2: i32, pol: &Polarization) -> Ratio {
    let v = find_row(band, j_z2).expect("tabulated row");
    let rows = table_rows();
    rows.iter()
        .filter(|r| r.band == Band::Gamma6)
        .map(|c| dipole_amplitude(&v, c, pol).expect("interband").probability)
        .fold(Ratio::ZERO, |acc, p| acc.add_signed(1, p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hh(j: i32) -> BlochState {
        find_row(Band::Gamma8Hh, j).unwrap()
    }
    fn g6(j: i32) -> BlochState {
        find_row(Band::Gamma6, j).unwrap()
    }
    fn lh(j: i32) -> BlochState {
        find_row(Band::Gamma8Lh, j).unwrap()
    }

    #[test]
    fn hh_sigma_minus_is_allowed_with_doubled_element() {
        // |3/2,3/2⟩ → |1/2,1/2⟩ under σ⁻: both X and Y paths add up
        let t = dipole_amplitude(&hh(3), &g6(1), &Polarization::sigma_minus()).unwrap();
        assert!(!t.is_forbidden());
        // (1/√2 normalization of ε) · 2⟨S|x|X⟩ · (1/√2 state coefficient)
        assert!((t.amplitude.norm() - 1.0).abs() < 1e-14);
        assert_eq!(t.probability, Ratio { num: 1, den: 1 });
        assert_eq!(t.exciton_label(), ExcitonLabel::EMinus);
    }

    #[test]
    fn hh_sigma_plus_cancels_exactly() {
        // PSR: ⟨S|x|X⟩ − ⟨S|y|Y⟩ = 0, bit-exact
        let t = dipole_amplitude(&hh(3), &g6(1), &Polarization::sigma_plus()).unwrap();
        assert_eq!(t.amplitude, C64::ZERO);
        assert_eq!(t.probability, Ratio::ZERO);
    }

    #[test]
    fn hh_spin_flip_forbidden_for_every_polarization() {
        for pol in Polarization::all() {
            let t = dipole_amplitude(&hh(3), &g6(-1), &pol).unwrap();
            assert_eq!(t.amplitude, C64::ZERO, "{:?}", pol.kind);
        }
    }

    #[test]
    fn same_band_pair_rejected() {
        let err = dipole_amplitude(&hh(3), &hh(-3), &Polarization::sigma_minus());
        assert!(matches!(err, Err(SelectionError::SameBandPair(_))));
        let err = dipole_amplitude(&hh(3), &lh(1), &Polarization::sigma_minus());
        assert!(matches!(err, Err(SelectionError::NotInterband)));
    }

    #[test]
    fn hh_sigma_minus_single_transition() {
        let ts = allowed_transitions(&[Band::Gamma8Hh], &Polarization::sigma_minus());
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].exciton_label(), ExcitonLabel::EMinus);
    }

    #[test]
    fn lh_sigma_zero_drives_two_e0_transitions() {
        let ts = allowed_transitions(&[Band::Gamma8Lh], &Polarization::sigma_zero());
        assert_eq!(ts.len(), 2);
        assert!(ts.iter().all(|t| t.exciton_label() == ExcitonLabel::EZero));
    }

    #[test]
    fn hh_sigma_zero_forbidden() {
        let ts = allowed_transitions(&[Band::Gamma8Hh], &Polarization::sigma_zero());
        assert!(ts.is_empty());
    }

    #[test]
    fn circular_branches_have_equal_magnitude() {
        let minus = allowed_transitions(&[Band::Gamma8Hh], &Polarization::sigma_minus());
        let plus = allowed_transitions(&[Band::Gamma8Hh], &Polarization::sigma_plus());
        assert_eq!(minus[0].probability, plus[0].probability);
    }

    #[test]
    fn six_row_table_matches_expected_labels() {
        let table = transition_table(&[Band::Gamma8Hh, Band::Gamma8Lh]);
        let labels: Vec<ExcitonLabel> = table.iter().map(|t| t.exciton_label()).collect();
        use ExcitonLabel::*;
        assert_eq!(labels, vec![EMinus, EPlus, EPlus, EMinus, EZero, EZero]);
        let rabi: Vec<String> = table.iter().map(|t| t.rabi_label()).collect();
        assert_eq!(
            rabi,
            vec![
                "Ω_{1/2,3/2}",
                "Ω_{-1/2,-3/2}",
                "Ω_{1/2,-1/2}",
                "Ω_{-1/2,1/2}",
                "Ω_{1/2,1/2}",
                "Ω_{-1/2,-1/2}"
            ]
        );
    }

    #[test]
    fn gamma7_has_four_transitions() {
        let mut n = 0;
        for pol in Polarization::all() {
            n += allowed_transitions(&[Band::Gamma7], &pol).len();
        }
        assert_eq!(n, 4);
    }

    #[test]
    fn probability_matches_float_amplitude() {
        for pol in Polarization::all() {
            for t in allowed_transitions(
                &[Band::Gamma8Hh, Band::Gamma8Lh, Band::Gamma7],
                &pol,
            ) {
                assert!((t.amplitude.norm_sqr() - t.probability.as_f64()).abs() < 1e-12);
            }
        }
    }
}
