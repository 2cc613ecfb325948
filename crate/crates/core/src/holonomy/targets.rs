//! Reference target unitaries for fidelity comparisons, on the logical
//! bases `(|0⟩, |1⟩) = (|E⁻⟩, |E⁺⟩)` and the two-qubit product basis.

use ndarray::Array2;

use crate::quantum::{UnitaryMatrix, C64};

/// Selective phase shift `U₁ = e^{iφ|1⟩⟨1|}`.
pub fn u1_phase_gate(phi: f64) -> UnitaryMatrix {
    let mut m: Array2<C64> = Array2::eye(2);
    m[[1, 1]] = C64::from_polar(1.0, phi);
    UnitaryMatrix::new(m).expect("diagonal phases are unitary")
}

/// Rotation `U₂ = e^{iφσ_y} = [[cos φ, sin φ], [−sin φ, cos φ]]`.
pub fn u2_rotation_gate(phi: f64) -> UnitaryMatrix {
    let (c, s) = (phi.cos(), phi.sin());
    let mut m: Array2<C64> = Array2::zeros((2, 2));
    m[[0, 0]] = C64::new(c, 0.0);
    m[[0, 1]] = C64::new(s, 0.0);
    m[[1, 0]] = C64::new(-s, 0.0);
    m[[1, 1]] = C64::new(c, 0.0);
    UnitaryMatrix::new(m).expect("rotations are unitary")
}

/// Two-qubit selective phase `U₃ = e^{iφ|11⟩⟨11|}` on `|00⟩,|01⟩,|10⟩,|11⟩`.
pub fn u3_two_qubit_phase(phi: f64) -> UnitaryMatrix {
    let mut m: Array2<C64> = Array2::eye(4);
    m[[3, 3]] = C64::from_polar(1.0, phi);
    UnitaryMatrix::new(m).expect("diagonal phases are unitary")
}
