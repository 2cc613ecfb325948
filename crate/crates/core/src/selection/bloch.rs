use crate::quantum::C64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Band {
    Gamma6,
    Gamma8Hh,
    Gamma8Lh,
    Gamma7,
}

impl Band {
    pub fn is_valence(self) -> bool {
        !matches!(self, Band::Gamma6)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Orbital {
    S,
    X,
    Y,
    Z,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Spin {
    Up,
    Down,
}

/// One term of a Bloch-function expansion: `coeff · |orbital, spin⟩`.
///
/// `weight_num/weight_den = |coeff|²` exactly, kept alongside the floating
/// coefficient so probability ratios stay exact rationals.
#[derive(Copy, Clone, Debug)]
pub struct ExpansionTerm {
    pub coeff: C64,
    pub weight_num: i64,
    pub weight_den: i64,
    pub orbital: Orbital,
    pub spin: Spin,
}

impl ExpansionTerm {
    fn new(coeff: C64, weight_num: i64, weight_den: i64, orbital: Orbital, spin: Spin) -> Self {
        Self {
            coeff,
            weight_num,
            weight_den,
            orbital,
            spin,
        }
    }
}

/// A zone-center Bloch state `|J_tot, J_z⟩` with its orbital/spin expansion.
///
/// Half-integer angular momenta are stored doubled (`j_tot2 = 2·J_tot`) so
/// they stay integral.
#[derive(Clone, Debug)]
pub struct BlochState {
    pub band: Band,
    pub j_tot2: i32,
    pub j_z2: i32,
    pub expansion: Vec<ExpansionTerm>,
}

impl BlochState {
    /// Sum of `|coeff|²` over the expansion; 1 for every tabulated row.
    pub fn norm_sqr(&self) -> f64 {
        self.expansion.iter().map(|t| t.coeff.norm_sqr()).sum()
    }

    pub fn label(&self) -> String {
        let half = |x: i32| {
            if x % 2 == 0 {
                format!("{}", x / 2)
            } else {
                format!("{}/2", x)
            }
        };
        format!(
            "|{}, {}⟩ {:?}",
            half(self.j_tot2),
            half(self.j_z2),
            self.band
        )
    }
}

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The eight tabulated `|J_tot, J_z⟩` rows: two Γ₆ conduction states, two
/// heavy holes, two light holes, two Γ₇ split-off states.
///
/// Composite orbitals like `(X ± iY)/√2` are expanded termwise, so e.g. the
/// heavy hole `|3/2, 3/2⟩ = (X + iY)↑/√2` becomes `X↑/√2 + iY↑/√2` with
/// exact weights 1/2 + 1/2.
pub fn table_rows() -> Vec<BlochState> {
    use Band::*;
    use Orbital::*;
    use Spin::*;
    let s2 = 1.0 / 2f64.sqrt();
    let s3 = 1.0 / 3f64.sqrt();
    let s6 = 1.0 / 6f64.sqrt();
    let s23 = (2f64 / 3.0).sqrt();
    vec![
        // Γ6 conduction: i|S↑⟩, i|S↓⟩
        BlochState {
            band: Gamma6,
            j_tot2: 1,
            j_z2: 1,
            expansion: vec![ExpansionTerm::new(c(0.0, 1.0), 1, 1, S, Up)],
        },
        BlochState {
            band: Gamma6,
            j_tot2: 1,
            j_z2: -1,
            expansion: vec![ExpansionTerm::new(c(0.0, 1.0), 1, 1, S, Down)],
        },
        // heavy holes: (X ± iY)/√2 with matching spin
        BlochState {
            band: Gamma8Hh,
            j_tot2: 3,
            j_z2: 3,
            expansion: vec![
                ExpansionTerm::new(c(s2, 0.0), 1, 2, X, Up),
                ExpansionTerm::new(c(0.0, s2), 1, 2, Y, Up),
            ],
        },
        BlochState {
            band: Gamma8Hh,
            j_tot2: 3,
            j_z2: -3,
            expansion: vec![
                ExpansionTerm::new(c(s2, 0.0), 1, 2, X, Down),
                ExpansionTerm::new(c(0.0, -s2), 1, 2, Y, Down),
            ],
        },
        // light holes: -√(2/3) Z with majority spin + (X ± iY)/√6 with minority spin
        BlochState {
            band: Gamma8Lh,
            j_tot2: 3,
            j_z2: 1,
            expansion: vec![
                ExpansionTerm::new(c(-s23, 0.0), 2, 3, Z, Up),
                ExpansionTerm::new(c(s6, 0.0), 1, 6, X, Down),
                ExpansionTerm::new(c(0.0, s6), 1, 6, Y, Down),
            ],
        },
        BlochState {
            band: Gamma8Lh,
            j_tot2: 3,
            j_z2: -1,
            expansion: vec![
                ExpansionTerm::new(c(-s23, 0.0), 2, 3, Z, Down),
                ExpansionTerm::new(c(-s6, 0.0), 1, 6, X, Up),
                ExpansionTerm::new(c(0.0, s6), 1, 6, Y, Up),
            ],
        },
        // Γ7 split-off: Z/√3 with majority spin + (X ± iY)/√3 with minority spin
        BlochState {
            band: Gamma7,
            j_tot2: 1,
            j_z2: 1,
            expansion: vec![
                ExpansionTerm::new(c(s3, 0.0), 1, 3, Z, Up),
                ExpansionTerm::new(c(s3, 0.0), 1, 3, X, Down),
                ExpansionTerm::new(c(0.0, s3), 1, 3, Y, Down),
            ],
        },
        BlochState {
            band: Gamma7,
            j_tot2: 1,
            j_z2: -1,
            expansion: vec![
                ExpansionTerm::new(c(s3, 0.0), 1, 3, Z, Down),
                ExpansionTerm::new(c(s3, 0.0), 1, 3, X, Up),
                ExpansionTerm::new(c(0.0, -s3), 1, 3, Y, Up),
            ],
        },
    ]
}

/// Number of tabulated rows.
pub const TABLE_ROWS: usize = 8;

pub(crate) fn find_row(band: Band, j_z2: i32) -> Option<BlochState> {
    table_rows()
        .into_iter()
        .find(|r| r.band == band && r.j_z2 == j_z2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eight_rows_all_normalized() {
        let rows = table_rows();
        assert_eq!(rows.len(), TABLE_ROWS);
        for row in &rows {
            assert!(
                (row.norm_sqr() - 1.0).abs() < 1e-12,
                "{} has |c|² sum {}",
                row.label(),
                row.norm_sqr()
            );
            // exact weights agree with the floating coefficients
            for t in &row.expansion {
                let w = t.weight_num as f64 / t.weight_den as f64;
                assert!((t.coeff.norm_sqr() - w).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn band_quantum_numbers_match_expected_pattern() {
        let rows = table_rows();
        let hh: Vec<_> = rows.iter().filter(|r| r.band == Band::Gamma8Hh).collect();
        assert_eq!(hh.len(), 2);
        assert!(hh.iter().all(|r| r.j_tot2 == 3 && r.j_z2.abs() == 3));
        let lh: Vec<_> = rows.iter().filter(|r| r.band == Band::Gamma8Lh).collect();
        assert!(lh.iter().all(|r| r.j_tot2 == 3 && r.j_z2.abs() == 1));
        let g7: Vec<_> = rows.iter().filter(|r| r.band == Band::Gamma7).collect();
        assert!(g7.iter().all(|r| r.j_tot2 == 1 && r.j_z2.abs() == 1));
    }
}
