use ndarray::{Array1, Array2};

use super::state::{BasisLabels, StateVector};
use super::{QuantumError, Result, C64};

/// Hermiticity violations beyond this are rejected outright.
pub const HERMITICITY_REJECT: f64 = 1e-9;

/// Frobenius defect allowed by [`UnitaryMatrix::new`].
pub const UNITARITY_TOL: f64 = 1e-10;

/// A Hermitian operator on a labeled basis, entries in `ℏ·fs⁻¹`.
#[derive(Clone, Debug)]
pub struct HermitianOperator {
    labels: BasisLabels,
    mat: Array2<C64>,
}

impl HermitianOperator {
    pub fn new(labels: BasisLabels, mat: Array2<C64>) -> Result<Self> {
        let (r, c) = mat.dim();
        if r != c {
            return Err(QuantumError::NotSquare(r, c));
        }
        if labels.len() != r {
            return Err(QuantumError::LabelCount(labels.len(), r));
        }
        if mat.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(QuantumError::NonFinite);
        }
        let defect = hermiticity_defect(&mat);
        if defect > HERMITICITY_REJECT {
            return Err(QuantumError::NotHermitian(defect, HERMITICITY_REJECT));
        }
        Ok(Self { labels, mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn labels(&self) -> &BasisLabels {
        &self.labels
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.mat
    }

    /// Largest deviation of `entries[i][j]` from `conj(entries[j][i])`.
    pub fn hermiticity_defect(&self) -> f64 {
        hermiticity_defect(&self.mat)
    }

    /// `H|ψ⟩` as a raw amplitude vector (not renormalized).
    pub fn apply_raw(&self, psi: &StateVector) -> Result<Array1<C64>> {
        if psi.dim() != self.dim() {
            return Err(QuantumError::DimensionMismatch(psi.dim(), self.dim()));
        }
        Ok(self.mat.dot(psi.amplitudes()))
    }

    /// `⟨ψ|H|ψ⟩`, guaranteed real for Hermitian input.
    pub fn expectation(&self, psi: &StateVector) -> Result<f64> {
        let hpsi = self.apply_raw(psi)?;
        let val: C64 = psi
            .amplitudes()
            .iter()
            .zip(hpsi.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        Ok(val.re)
    }

    /// An upper bound on the spectral radius (max row sum of magnitudes).
    pub fn norm_bound(&self) -> f64 {
        (0..self.dim())
            .map(|i| self.mat.row(i).iter().map(|a| a.norm()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn hermiticity_defect(mat: &Array2<C64>) -> f64 {
    let n = mat.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (mat[[i, j]] - mat[[j, i]].conj()).norm();
            worst = worst.max(d);
        }
    }
    worst
}

/// A unitary matrix; `‖U†U − I‖_F` is checked at construction.
#[derive(Clone, Debug)]
pub struct UnitaryMatrix {
    mat: Array2<C64>,
    defect: f64,
}

impl UnitaryMatrix {
    pub fn new(mat: Array2<C64>) -> Result<Self> {
        Self::with_tolerance(mat, UNITARITY_TOL)
    }

    /// Accumulated path-ordered products warrant a looser tolerance than
    /// single exponentials; callers pass it explicitly.
    pub fn with_tolerance(mat: Array2<C64>, tol: f64) -> Result<Self> {
        let (r, c) = mat.dim();
        if r != c {
            return Err(QuantumError::NotSquare(r, c));
        }
        if mat.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(QuantumError::NonFinite);
        }
        let defect = unitarity_defect(&mat);
        if defect > tol {
            return Err(QuantumError::NotUnitary(defect, tol));
        }
        Ok(Self { mat, defect })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            mat: Array2::eye(dim),
            defect: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.mat
    }

    pub fn unitarity_defect(&self) -> f64 {
        self.defect
    }

    pub fn dagger(&self) -> Self {
        Self {
            mat: dagger(&self.mat),
            defect: self.defect,
        }
    }

    /// `self · rhs`.
    pub fn compose(&self, rhs: &UnitaryMatrix) -> Result<Self> {
        if self.dim() != rhs.dim() {
            return Err(QuantumError::DimensionMismatch(self.dim(), rhs.dim()));
        }
        let mat = self.mat.dot(&rhs.mat);
        let defect = unitarity_defect(&mat);
        Ok(Self { mat, defect })
    }

    pub fn apply(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.dim() != self.dim() {
            return Err(QuantumError::DimensionMismatch(psi.dim(), self.dim()));
        }
        StateVector::new(psi.labels().clone(), self.mat.dot(psi.amplitudes()))
    }
}

pub(crate) fn dagger(mat: &Array2<C64>) -> Array2<C64> {
    mat.t().mapv(|a| a.conj())
}

pub(crate) fn unitarity_defect(mat: &Array2<C64>) -> f64 {
    let n = mat.nrows();
    let gram = dagger(mat).dot(mat);
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            let target = if i == j { C64::new(1.0, 0.0) } else { C64::ZERO };
            sum += (gram[[i, j]] - target).norm_sqr();
        }
    }
    sum.sqrt()
}

pub(crate) fn frobenius_distance(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::array;

    #[test]
    fn hermitian_construction_rejects_asymmetry() {
        let labels = BasisLabels::new(["a", "b"]).unwrap();
        let bad = array![
            [C64::ZERO, C64::new(1.0, 0.0)],
            [C64::new(0.5, 0.0), C64::ZERO]
        ];
        assert!(matches!(
            HermitianOperator::new(labels, bad),
            Err(QuantumError::NotHermitian(..))
        ));
    }

    #[test]
    fn unitary_construction_rejects_scaling() {
        let two = array![
            [C64::new(2.0, 0.0), C64::ZERO],
            [C64::ZERO, C64::new(2.0, 0.0)]
        ];
        assert!(UnitaryMatrix::new(two).is_err());
    }

    #[test]
    fn expectation_is_real() {
        let labels = BasisLabels::new(["a", "b"]).unwrap();
        let h = HermitianOperator::new(
            labels.clone(),
            array![
                [C64::new(1.0, 0.0), C64::new(0.0, 0.3)],
                [C64::new(0.0, -0.3), C64::new(-2.0, 0.0)]
            ],
        )
        .unwrap();
        let psi = StateVector::new(labels, array![C64::new(0.6, 0.2), C64::new(0.5, -0.4)])
            .unwrap();
        let e = h.expectation(&psi).unwrap();
        assert!(e.is_finite());
    }
}
