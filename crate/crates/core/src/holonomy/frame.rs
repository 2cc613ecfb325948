use ndarray::{s, Array1, Array2};

use crate::hamiltonians::{GateKind, GateParams};
use crate::quantum::{eigh, BasisLabels, HermitianOperator, StateVector, C64};

use super::{HolonomyError, Result};

/// An ordered orthonormal basis of the zero-energy eigenspace at one control
/// point, with a fixed gauge.
#[derive(Clone, Debug)]
pub struct DarkFrame {
    labels: BasisLabels,
    /// n×k matrix, columns are the frame vectors
    columns: Array2<C64>,
    point: Vec<f64>,
}

impl DarkFrame {
    pub fn from_columns(labels: BasisLabels, columns: Array2<C64>, point: Vec<f64>) -> Self {
        Self {
            labels,
            columns,
            point,
        }
    }

    pub fn from_states(states: &[StateVector], point: Vec<f64>) -> Self {
        let n = states[0].dim();
        let mut columns = Array2::zeros((n, states.len()));
        for (k, st) in states.iter().enumerate() {
            columns.column_mut(k).assign(st.amplitudes());
        }
        Self {
            labels: states[0].labels().clone(),
            columns,
            point,
        }
    }

    pub fn dim(&self) -> usize {
        self.columns.nrows()
    }

    /// Number of frame vectors (dark-space dimension).
    pub fn rank(&self) -> usize {
        self.columns.ncols()
    }

    pub fn point(&self) -> &[f64] {
        &self.point
    }

    pub fn labels(&self) -> &BasisLabels {
        &self.labels
    }

    pub fn columns(&self) -> &Array2<C64> {
        &self.columns
    }

    pub fn vector(&self, k: usize) -> StateVector {
        StateVector::new(self.labels.clone(), self.columns.column(k).to_owned())
            .expect("frame columns are normalized")
    }

    pub fn vectors(&self) -> Vec<StateVector> {
        (0..self.rank()).map(|k| self.vector(k)).collect()
    }

    /// `self† · other`, the k×k overlap matrix.
    pub fn overlap(&self, other: &DarkFrame) -> Array2<C64> {
        let a = self.columns.mapv(|c| c.conj());
        a.t().dot(&other.columns)
    }

    /// Coefficients of `ψ` in this frame.
    pub fn coefficients(&self, psi: &StateVector) -> Array1<C64> {
        let mut out = Array1::zeros(self.rank());
        for k in 0..self.rank() {
            out[k] = self
                .columns
                .column(k)
                .iter()
                .zip(psi.amplitudes().iter())
                .map(|(d, p)| d.conj() * p)
                .sum();
        }
        out
    }

    /// Population outside the frame's span: `1 − ‖P ψ‖²`.
    pub fn leakage(&self, psi: &StateVector) -> f64 {
        let w: f64 = self.coefficients(psi).iter().map(|c| c.norm_sqr()).sum();
        (1.0 - w).max(0.0)
    }

    /// Largest principal angle (in radians) between this frame's span and
    /// another's, via the projection defect ‖(1 − P_other) self‖₂.
    pub fn principal_angle(&self, other: &DarkFrame) -> f64 {
        let m = other.overlap(self); // k×k
        let residual = &self.columns - &other.columns.dot(&m);
        // largest singular value of the residual
        let gram = residual.mapv(|c| c.conj()).t().dot(&residual);
        let (vals, _) = eigh(&gram).expect("gram matrix is Hermitian");
        vals[vals.len() - 1].max(0.0).sqrt().asin_clamped()
    }

    /// Columns re-mixed by a unitary `w` (gauge change).
    pub fn gauge_transformed(&self, w: &Array2<C64>) -> Self {
        Self {
            labels: self.labels.clone(),
            columns: self.columns.dot(w),
            point: self.point.clone(),
        }
    }
}

trait AsinClamped {
    fn asin_clamped(self) -> f64;
}

impl AsinClamped for f64 {
    fn asin_clamped(self) -> f64 {
        self.clamp(-1.0, 1.0).asin()
    }
}

/// Unitary polar factor of a (near-invertible) square matrix:
/// `polar_unitary(X) = X (X†X)^{−1/2}`.
pub fn polar_unitary(x: &Array2<C64>) -> Result<Array2<C64>> {
    let gram = x.mapv(|c| c.conj()).t().dot(x);
    let (vals, vecs) = eigh(&gram)?;
    let k = vals.len();
    if vals[0] <= 1e-24 {
        return Err(HolonomyError::PathTooCoarse {
            overlap: vals[0].max(0.0).sqrt(),
            required: 1e-12,
        });
    }
    let mut inv_sqrt = Array2::zeros((k, k));
    for i in 0..k {
        inv_sqrt[[i, i]] = C64::new(1.0 / vals[i].sqrt(), 0.0);
    }
    let vecs_h = vecs.mapv(|c| c.conj());
    Ok(x.dot(&vecs).dot(&inv_sqrt).dot(&vecs_h.t()))
}

/// Kernel basis of a gate Hamiltonian as a gauge-fixed [`DarkFrame`].
///
/// Eigenvalues with `|λ| ≤ 1e-9·‖H‖` count as dark. When `previous` is
/// given, the raw eigenbasis is rotated by the unitary polar factor of its
/// overlap with the previous frame (maximal-overlap alignment), which keeps
/// the frame smooth along a path; pass the previous point's frame while
/// walking a loop, or an analytic frame to pin the gauge outright.
pub fn dark_frame(
    h: &HermitianOperator,
    expected_dim: usize,
    previous: Option<&DarkFrame>,
    point: &[f64],
) -> Result<DarkFrame> {
    let (vals, vecs) = eigh(h.matrix())?;
    let n = vals.len();
    let tol = 1e-9 * h.norm_bound();
    let dark: Vec<usize> = (0..n).filter(|&i| vals[i].abs() <= tol).collect();
    if dark.len() != expected_dim {
        return Err(HolonomyError::DegeneracyBroken {
            expected: expected_dim,
            found: dark.len(),
            point: point.to_vec(),
        });
    }
    let mut columns = Array2::zeros((n, expected_dim));
    for (k, &i) in dark.iter().enumerate() {
        columns.column_mut(k).assign(&vecs.slice(s![.., i]));
    }
    let mut frame = DarkFrame {
        labels: h.labels().clone(),
        columns,
        point: point.to_vec(),
    };
    if let Some(prev) = previous {
        let m = prev.overlap(&frame); // prev† new
        // rotate new frame onto prev: W = polar factor of (new† prev) = M†
        let m_dag = m.mapv(|c| c.conj()).t().to_owned();
        let w = polar_unitary(&m_dag)?;
        frame = frame.gauge_transformed(&w);
    }
    Ok(frame)
}

/// The closed-form dark states of each gate family, normalized, in the
/// published ordering.
///
/// These are exact kernels of [`GateParams::hamiltonian`] at the same
/// `(θ, φ)`; the numeric route and this one agree up to machine precision,
/// which the frame tests pin down via principal angles.
pub fn analytic_dark_states(gate: &GateParams, theta: f64, phi: f64) -> Vec<StateVector> {
    let labels = gate.basis();
    let c2 = (theta / 2.0).cos();
    let s2 = (theta / 2.0).sin();
    let mk = |amps: Vec<C64>| StateVector::new(labels.clone(), Array1::from(amps)).unwrap();
    match gate.kind {
        GateKind::Gate1 => {
            // |E⁻⟩ and cos(θ/2)|E⁺⟩ + sin(θ/2) e^{iφ}|E⁰⟩
            vec![
                mk(vec![C64::ZERO, C64::ZERO, C64::new(1.0, 0.0), C64::ZERO]),
                mk(vec![
                    C64::ZERO,
                    C64::new(c2, 0.0),
                    C64::ZERO,
                    C64::from_polar(s2, phi),
                ]),
            ]
        }
        GateKind::Gate2 => {
            let (ct, st) = (theta.cos(), theta.sin());
            let (cp, sp) = (phi.cos(), phi.sin());
            vec![
                // ψ₁ = cosθcosφ|E⁻⟩ + cosθsinφ|E⁺⟩ − sinθ|E⁰⟩
                mk(vec![
                    C64::ZERO,
                    C64::new(ct * sp, 0.0),
                    C64::new(ct * cp, 0.0),
                    C64::new(-st, 0.0),
                ]),
                // ψ₂ = cosφ|E⁺⟩ − sinφ|E⁻⟩
                mk(vec![
                    C64::ZERO,
                    C64::new(cp, 0.0),
                    C64::new(-sp, 0.0),
                    C64::ZERO,
                ]),
            ]
        }
        GateKind::TwoQubitPhase => {
            // kernel of the Ω^{++} = Ωs e^{iφ}, Ω^{00} = Ωc,
            // Ω^{+0} = Ω√(sc) e^{iφ/2} schedule (θ ∈ [0, π])
            let sab = (s2 * c2).abs();
            let sym = 1.0 / (2.0 * (1.0 + 2.0 * sab)).sqrt();
            vec![
                // D₁ ∝ Ω^{00}|++⟩ − Ω^{++}|00⟩
                mk(vec![
                    C64::ZERO,
                    C64::new(c2, 0.0),
                    C64::from_polar(s2, phi) * (-1.0),
                    C64::ZERO,
                    C64::ZERO,
                ]),
                // D₂ = (|+0⟩ − |0+⟩)/√2
                mk(vec![
                    C64::ZERO,
                    C64::ZERO,
                    C64::ZERO,
                    C64::new(1.0 / 2f64.sqrt(), 0.0),
                    C64::new(-1.0 / 2f64.sqrt(), 0.0),
                ]),
                // D₃ ∝ Ω^{+0}[(Ω^{++})*|++⟩ + (Ω^{00})*|00⟩] − (Ω²/2)(|+0⟩+|0+⟩)
                //    = √(sinθ/(1+sinθ))(s e^{−iφ/2}|++⟩ + c e^{iφ/2}|00⟩)
                //      − (|+0⟩+|0+⟩)/√(2(1+sinθ))
                mk(vec![
                    C64::ZERO,
                    C64::from_polar(root_scale(s2, sab), -phi / 2.0),
                    C64::from_polar(root_scale(c2, sab), phi / 2.0),
                    C64::new(-sym, 0.0),
                    C64::new(-sym, 0.0),
                ]),
            ]
        }
        GateKind::TwoQubitEntangling => {
            let sab = (s2 * c2).abs();
            let sym = 1.0 / (2.0 * (1.0 + 2.0 * sab)).sqrt();
            vec![
                // D₁ = cos(θ/2)|++⟩ − sin(θ/2)|−−⟩
                mk(vec![
                    C64::ZERO,
                    C64::new(c2, 0.0),
                    C64::new(-s2, 0.0),
                    C64::ZERO,
                    C64::ZERO,
                ]),
                // D₂ = (|+−⟩ − |−+⟩)/√2
                mk(vec![
                    C64::ZERO,
                    C64::ZERO,
                    C64::ZERO,
                    C64::new(1.0 / 2f64.sqrt(), 0.0),
                    C64::new(-1.0 / 2f64.sqrt(), 0.0),
                ]),
                // D₃ = √(|sinθ|/(1+|sinθ|))(sin(θ/2)|++⟩ + cos(θ/2)|−−⟩)
                //      − (|+−⟩+|−+⟩)/√(2(1+|sinθ|))
                mk(vec![
                    C64::ZERO,
                    C64::new(root_scale(s2, sab), 0.0),
                    C64::new(root_scale(c2, sab), 0.0),
                    C64::new(-sym, 0.0),
                    C64::new(-sym, 0.0),
                ]),
            ]
        }
    }
}

/// `√(|sinθ|/(1+|sinθ|))·x` written via `|sc| = |sinθ|/2` so the phase-gate
/// and entangling-gate forms share one expression.
fn root_scale(x: f64, sab: f64) -> f64 {
    let s_abs = 2.0 * sab; // |sinθ|
    (s_abs / (1.0 + s_abs)).sqrt() * x
}

/// Frame of the analytic dark states at a point.
pub fn analytic_frame(gate: &GateParams, theta: f64, phi: f64) -> DarkFrame {
    DarkFrame::from_states(&analytic_dark_states(gate, theta, phi), vec![theta, phi])
}
