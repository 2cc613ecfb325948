//! Cyclic Jacobi eigensolver for complex Hermitian matrices.
//!
//! Jacobi is slow compared to tridiagonalization but unconditionally robust
//! on the heavily degenerate spectra this crate produces (every driven
//! Hamiltonian here has a multi-dimensional kernel), and at dim ≤ 16 speed is
//! irrelevant.

use ndarray::{Array1, Array2};

use super::operator::hermiticity_defect;
use super::state::StateVector;
use super::{HermitianOperator, QuantumError, Result, C64};

const MAX_SWEEPS: usize = 60;

/// Eigen-decomposition of a Hermitian matrix.
///
/// Returns eigenvalues in ascending order and the matching orthonormal
/// eigenvectors as columns of `vectors`.
pub fn eigh(mat: &Array2<C64>) -> Result<(Array1<f64>, Array2<C64>)> {
    let n = mat.nrows();
    if mat.ncols() != n {
        return Err(QuantumError::NotSquare(n, mat.ncols()));
    }
    let defect = hermiticity_defect(mat);
    if defect > super::operator::HERMITICITY_REJECT {
        return Err(QuantumError::NotHermitian(
            defect,
            super::operator::HERMITICITY_REJECT,
        ));
    }

    let mut a = mat.clone();
    // Work on the exactly Hermitian part so roundoff in the input cannot
    // leak into complex diagonals.
    for i in 0..n {
        a[[i, i]] = C64::new(a[[i, i]].re, 0.0);
        for j in (i + 1)..n {
            let avg = (a[[i, j]] + a[[j, i]].conj()) * 0.5;
            a[[i, j]] = avg;
            a[[j, i]] = avg.conj();
        }
    }
    let mut v: Array2<C64> = Array2::eye(n);

    let scale = a.iter().map(|x| x.norm()).fold(0.0f64, f64::max).max(1.0);
    let stop = scale * 1e-15 * (n as f64);

    let mut converged = false;
    for _sweep in 0..MAX_SWEEPS {
        let off = off_diagonal_norm(&a);
        if off <= stop {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > stop * 10.0 {
        return Err(QuantumError::NoConvergence(MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[[i, i]].re.partial_cmp(&a[[j, j]].re).unwrap());
    let vals = Array1::from_iter(order.iter().map(|&i| a[[i, i]].re));
    let mut vecs = Array2::zeros((n, n));
    for (k, &i) in order.iter().enumerate() {
        vecs.column_mut(k).assign(&v.column(i));
    }
    Ok((vals, vecs))
}

fn off_diagonal_norm(a: &Array2<C64>) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += a[[i, j]].norm_sqr();
        }
    }
    (2.0 * s).sqrt()
}

/// One complex Jacobi rotation zeroing `a[p, q]`.
///
/// The pivot block is phase-rotated to a real symmetric 2x2 and then rotated
/// by the classic Rutishauser angle; both factors are folded into a single
/// unitary applied to rows/columns `p`, `q` of `a` and columns of `v`.
fn rotate(a: &mut Array2<C64>, v: &mut Array2<C64>, p: usize, q: usize) {
    let apq = a[[p, q]];
    let abs_apq = apq.norm();
    if abs_apq == 0.0 {
        return;
    }
    let app = a[[p, p]].re;
    let aqq = a[[q, q]].re;
    let phase = apq / abs_apq; // e^{iβ}

    let tau = (aqq - app) / (2.0 * abs_apq);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    // Combined unitary R = [[c, s·e^{iβ}], [−s·e^{-iβ}, c]]; A ← R†AR, V ← VR.
    let n = a.nrows();
    let sp = phase * s;
    for i in 0..n {
        let aip = a[[i, p]];
        let aiq = a[[i, q]];
        a[[i, p]] = aip * c - aiq * sp.conj();
        a[[i, q]] = aip * sp + aiq * c;
    }
    for j in 0..n {
        let apj = a[[p, j]];
        let aqj = a[[q, j]];
        a[[p, j]] = apj * c - aqj * sp;
        a[[q, j]] = apj * sp.conj() + aqj * c;
    }
    for i in 0..n {
        let vip = v[[i, p]];
        let viq = v[[i, q]];
        v[[i, p]] = vip * c - viq * sp.conj();
        v[[i, q]] = vip * sp + viq * c;
    }
    // The rotation annihilates the pivot analytically; pin it to keep the
    // off-diagonal norm monotone.
    a[[p, q]] = C64::ZERO;
    a[[q, p]] = C64::ZERO;
    a[[p, p]] = C64::new(a[[p, p]].re, 0.0);
    a[[q, q]] = C64::new(a[[q, q]].re, 0.0);
}

/// A group of eigenvectors sharing (within tolerance) one eigenvalue.
#[derive(Clone, Debug)]
pub struct Eigenspace {
    pub eigenvalue: f64,
    pub basis: Vec<StateVector>,
}

/// Full eigensystem of `h` with eigenvalues within `degeneracy_tol` of each
/// other merged into a single eigenspace. Spaces are returned in ascending
/// eigenvalue order; the reported eigenvalue is the group mean.
pub fn eigensystem(h: &HermitianOperator, degeneracy_tol: f64) -> Result<Vec<Eigenspace>> {
    if !(degeneracy_tol > 0.0) {
        return Err(QuantumError::BadTolerance(degeneracy_tol));
    }
    let (vals, vecs) = eigh(h.matrix())?;
    let n = vals.len();
    let mut spaces: Vec<Eigenspace> = Vec::new();
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && vals[end] - vals[end - 1] <= degeneracy_tol {
            end += 1;
        }
        let mean = vals.slice(ndarray::s![start..end]).mean().unwrap();
        let basis = (start..end)
            .map(|k| StateVector::new(h.labels().clone(), vecs.column(k).to_owned()))
            .collect::<Result<Vec<_>>>()?;
        spaces.push(Eigenspace {
            eigenvalue: mean,
            basis,
        });
        start = end;
    }
    Ok(spaces)
}
