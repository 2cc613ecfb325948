use ndarray::Array2;

use super::eigen::eigh;
use super::operator::{dagger, hermiticity_defect};
use super::{QuantumError, Result, UnitaryMatrix, C64};

/// Matrix exponential of a general small complex matrix by
/// scaling-and-squaring with a Taylor kernel.
///
/// The argument is scaled to norm ≤ 1/4 where a 16-term Taylor series is
/// accurate to machine precision, then squared back up.
pub fn expm(a: &Array2<C64>) -> Result<Array2<C64>> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(QuantumError::NotSquare(n, a.ncols()));
    }
    if a.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
        return Err(QuantumError::NonFinite);
    }
    let norm = (0..n)
        .map(|i| a.row(i).iter().map(|x| x.norm()).sum::<f64>())
        .fold(0.0f64, f64::max);
    let squarings = if norm <= 0.25 {
        0
    } else {
        (norm / 0.25).log2().ceil() as u32
    };
    let scaled = a.mapv(|x| x / C64::new(2f64.powi(squarings as i32), 0.0));

    let mut result: Array2<C64> = Array2::eye(n);
    let mut term: Array2<C64> = Array2::eye(n);
    for k in 1..=16 {
        term = term.dot(&scaled);
        term.mapv_inplace(|x| x / C64::new(k as f64, 0.0));
        result = result + &term;
    }
    for _ in 0..squarings {
        result = result.dot(&result);
    }
    Ok(result)
}

/// Exponential of an anti-Hermitian matrix through the eigen-decomposition of
/// `iA`, so the result is unitary to the accuracy of the eigenvectors.
pub fn expm_antihermitian(a: &Array2<C64>) -> Result<UnitaryMatrix> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(QuantumError::NotSquare(n, a.ncols()));
    }
    // iA must be Hermitian
    let ia = a.mapv(|x| C64::new(0.0, 1.0) * x);
    let defect = hermiticity_defect(&ia);
    if defect > super::operator::HERMITICITY_REJECT {
        return Err(QuantumError::NotHermitian(
            defect,
            super::operator::HERMITICITY_REJECT,
        ));
    }
    let (vals, vecs) = eigh(&ia)?;
    // A = -i (iA)  ⇒  exp(A) = V diag(e^{-iλ}) V†
    let mut d: Array2<C64> = Array2::zeros((n, n));
    for k in 0..n {
        d[[k, k]] = C64::from_polar(1.0, -vals[k]);
    }
    let u = vecs.dot(&d).dot(&dagger(&vecs));
    UnitaryMatrix::new(u)
}
