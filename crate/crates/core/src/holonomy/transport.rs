use ndarray::Array2;

use crate::hamiltonians::GateParams;
use crate::quantum::{expm_antihermitian, StateVector, UnitaryMatrix, C64};

use super::connection::{commutation_defect, connection_grid, curvature_at};
use super::frame::{analytic_frame, dark_frame, polar_unitary, DarkFrame};
use super::loops::ParameterLoop;
use super::{HolonomyError, Result};

/// Accumulated products tolerate a looser unitarity defect than a single
/// exponential.
pub const HOLONOMY_UNITARITY_TOL: f64 = 1e-8;

/// Initial states must sit in the dark subspace up to this weight.
pub const DARK_SUBSPACE_TOL: f64 = 1e-6;

const MIN_STEPS: usize = 100;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum HolonomyMethod {
    Stokes,
    PathOrdered,
}

/// The unitary a closed control loop applies to the dark subspace,
/// expressed in the base frame's ordered basis.
#[derive(Clone, Debug)]
pub struct Holonomy {
    pub unitary: UnitaryMatrix,
    pub base_frame: DarkFrame,
    pub method: HolonomyMethod,
    pub steps: usize,
}

impl Holonomy {
    /// Predicted final state for an initial state inside the dark subspace.
    pub fn apply(&self, psi0: &StateVector) -> Result<StateVector> {
        let coeffs = self.base_frame.coefficients(psi0);
        let weight: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
        if 1.0 - weight > DARK_SUBSPACE_TOL {
            return Err(HolonomyError::NotInDarkSubspace { weight });
        }
        let rotated = self.unitary.matrix().dot(&coeffs);
        let amps = self.base_frame.columns().dot(&rotated);
        Ok(StateVector::new(self.base_frame.labels().clone(), amps)?)
    }

    /// `tr(U^m)` for `m = 1..=rank`; a gauge-invariant fingerprint of the
    /// eigenvalue spectrum (Newton's identities).
    pub fn trace_powers(&self) -> Vec<C64> {
        let k = self.unitary.dim();
        let mut acc: Array2<C64> = Array2::eye(k);
        let mut out = Vec::with_capacity(k);
        for _ in 0..k {
            acc = acc.dot(self.unitary.matrix());
            out.push((0..k).map(|i| acc[[i, i]]).sum());
        }
        out
    }

    /// 2×2 sub-block of the unitary on the given frame indices.
    pub fn block(&self, rows: [usize; 2]) -> Array2<C64> {
        let u = self.unitary.matrix();
        let mut b = Array2::zeros((2, 2));
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in rows.iter().enumerate() {
                b[[i, j]] = u[[r, c]];
            }
        }
        b
    }
}

/// Path-ordered holonomy over a discretized closed loop.
///
/// Frames come from the Hamiltonian kernel at each control point. Each step
/// contributes the unitary polar factor of the successive overlap matrix
/// `M_k = ⟨D_k|D_{k+1}⟩` — the maximal-overlap gauge alignment — which
/// equals `exp(∫A·dλ)` across the step to third order; the transport is the
/// reversed ordered product of their adjoints, `U = (Π M̃_k)†`. Arbitrary
/// per-point eigenvector gauges cancel between adjacent factors, and the
/// loop's endpoint reuses the starting frame, so the result lives in the
/// base frame's basis.
pub fn holonomy_path_ordered(
    gate: &GateParams,
    loop_: &ParameterLoop,
    steps: usize,
    anchor: Option<&DarkFrame>,
) -> Result<Holonomy> {
    if steps < MIN_STEPS {
        return Err(HolonomyError::TooFewSteps {
            given: steps,
            minimum: MIN_STEPS,
        });
    }
    if loop_.dim() != gate.kind.coords().len() {
        return Err(HolonomyError::CoordinateMismatch(
            loop_.dim(),
            gate.kind.coords().len(),
        ));
    }
    let pts = loop_.discretize(steps);

    // the schedule must return to its starting Hamiltonian even when the
    // coordinates close only modulo a period (θ sweeps)
    let start = &pts[0];
    let end_coords = &loop_.segments.last().unwrap().to;
    let h_start = gate.hamiltonian(start.theta(), start.phi())?;
    let h_end = gate.hamiltonian(
        end_coords[0],
        *end_coords.get(1).unwrap_or(&0.0),
    )?;
    let closure = h_start
        .matrix()
        .iter()
        .zip(h_end.matrix().iter())
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);
    if closure > 1e-6 * gate.omega_scale {
        return Err(HolonomyError::NotClosed(closure));
    }

    let k = gate.kind.dark_dim();
    let default_anchor;
    let anchor = match anchor {
        Some(a) => a,
        None => {
            default_anchor = analytic_frame(gate, start.theta(), start.phi());
            &default_anchor
        }
    };
    let base = dark_frame(&h_start, k, Some(anchor), &start.coords)?;

    let mut wilson: Array2<C64> = Array2::eye(k);
    let mut prev = base.clone();
    let n = pts.len();
    for (idx, pt) in pts.iter().enumerate().skip(1) {
        let frame = if idx == n - 1 {
            base.clone()
        } else {
            let h = gate.hamiltonian(pt.theta(), pt.phi())?;
            dark_frame(&h, k, None, &pt.coords)?
        };
        let m = prev.overlap(&frame);
        wilson = wilson.dot(&polar_unitary(&m)?);
        prev = frame;
    }
    let u = wilson.mapv(|c| c.conj()).t().to_owned();

    Ok(Holonomy {
        unitary: UnitaryMatrix::with_tolerance(u, HOLONOMY_UNITARITY_TOL)?,
        base_frame: base,
        method: HolonomyMethod::PathOrdered,
        steps: n - 1,
    })
}

/// Holonomy of the triangle loop family by the Stokes shortcut:
/// `U = exp(∬ F dθ∧dφ)` over the enclosed region (the loop runs clockwise,
/// so the transport exponent carries a plus sign).
///
/// Valid only where the connection components commute; refuses otherwise and
/// the caller falls back to [`holonomy_path_ordered`].
pub fn holonomy_stokes(
    gate: &GateParams,
    theta_m: f64,
    phi_m: f64,
    quad_points: usize,
) -> Result<Holonomy> {
    // commutation precheck on a coarse sample of the region
    let probe = connection_grid(
        gate,
        (1e-3, theta_m.max(2e-3)),
        (1e-3, phi_m.max(2e-3)),
        7,
        1e-5,
    );
    let defect = commutation_defect(&probe);
    if defect > 1e-8 {
        return Err(HolonomyError::NonCommutingConnection { defect });
    }

    let k = gate.kind.dark_dim();
    let n = quad_points.max(9) | 1; // odd
    let fd = 2e-4;
    let slope = if theta_m.abs() > 0.0 {
        phi_m / theta_m
    } else {
        0.0
    };
    // flux(θ) = ∫₀^{g(θ)} F(θ, φ) dφ by Simpson, then Simpson in θ
    let inner = |theta: f64| -> Array2<C64> {
        let top = slope * theta;
        let m = 17usize;
        if top <= 0.0 {
            return Array2::zeros((k, k));
        }
        let h = top / (m - 1) as f64;
        let mut acc: Array2<C64> = Array2::zeros((k, k));
        for j in 0..m {
            let w = simpson_weight(j, m);
            acc = acc + curvature_at(gate, theta, j as f64 * h, fd) * C64::new(w * h / 3.0, 0.0);
        }
        acc
    };
    let h = theta_m / (n - 1) as f64;
    let mut flux: Array2<C64> = Array2::zeros((k, k));
    for i in 0..n {
        let w = simpson_weight(i, n);
        flux = flux + inner(i as f64 * h) * C64::new(w * h / 3.0, 0.0);
    }

    let u = expm_antihermitian(&flux)?;
    let base = analytic_frame(gate, 0.0, 0.0);
    Ok(Holonomy {
        unitary: UnitaryMatrix::with_tolerance(u.matrix().clone(), HOLONOMY_UNITARITY_TOL)?,
        base_frame: base,
        method: HolonomyMethod::Stokes,
        steps: n,
    })
}

fn simpson_weight(i: usize, n: usize) -> f64 {
    if i == 0 || i == n - 1 {
        1.0
    } else if i % 2 == 1 {
        4.0
    } else {
        2.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::GateKind;
    use crate::quantum::fidelity;
    use std::f64::consts::PI;

    fn frob_diff(a: &Array2<C64>, b: &Array2<C64>) -> f64 {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn gate1_path_ordered_phase_matches_closed_form() {
        let gate = GateParams::new(GateKind::Gate1, 0.02);
        let lp = ParameterLoop::triangle(PI, PI);
        let hol = holonomy_path_ordered(&gate, &lp, 3000, None).unwrap();
        let u = hol.unitary.matrix();
        // |E⁻⟩ untouched, |E⁺⟩ picks up e^{iφ₁} with φ₁ = ½(sinθ_m − θ_m cosθ_m)
        assert!((u[[0, 0]] - C64::new(1.0, 0.0)).norm() < 1e-6);
        let phi1 = 0.5 * (PI.sin() - PI * PI.cos());
        assert!(
            (u[[1, 1]].arg() - phi1).abs() < 1e-6,
            "phase {} vs {phi1}",
            u[[1, 1]].arg()
        );
        assert!(u[[0, 1]].norm() < 1e-7);
    }

    #[test]
    fn gate1_stokes_agrees_with_path_ordered() {
        let gate = GateParams::new(GateKind::Gate1, 0.02);
        for &theta_m in &[PI / 2.0, PI] {
            let stokes = holonomy_stokes(&gate, theta_m, theta_m, 81).unwrap();
            let lp = ParameterLoop::triangle(theta_m, theta_m);
            let po = holonomy_path_ordered(&gate, &lp, 4000, None).unwrap();
            let d = frob_diff(stokes.unitary.matrix(), po.unitary.matrix());
            assert!(d < 1e-6, "θ_m = {theta_m}: {d}");
        }
    }

    #[test]
    fn zero_area_loop_gives_identity() {
        let gate = GateParams::new(GateKind::Gate1, 0.02);
        let hol = holonomy_stokes(&gate, 0.0, 0.0, 21).unwrap();
        let d = frob_diff(hol.unitary.matrix(), &Array2::eye(2));
        assert!(d < 1e-12);
    }

    #[test]
    fn reversed_loop_inverts_the_holonomy() {
        let gate = GateParams::new(GateKind::Gate2, 0.02);
        let lp = ParameterLoop::triangle(1.3, 1.3);
        let fwd = holonomy_path_ordered(&gate, &lp, 800, None).unwrap();
        let rev = holonomy_path_ordered(&gate, &lp.reversed(), 800, None).unwrap();
        let prod = rev.unitary.matrix().dot(fwd.unitary.matrix());
        assert!(frob_diff(&prod, &Array2::eye(2)) < 1e-8);
    }

    #[test]
    fn doubling_steps_is_converged_at_default_counts() {
        let gate = GateParams::new(GateKind::Gate2, 0.02);
        let lp = ParameterLoop::triangle(1.43, 1.43);
        let a = holonomy_path_ordered(&gate, &lp, 4000, None).unwrap();
        let b = holonomy_path_ordered(&gate, &lp, 8000, None).unwrap();
        assert!(frob_diff(a.unitary.matrix(), b.unitary.matrix()) < 1e-6);
    }

    #[test]
    fn phase_gate_refuses_stokes() {
        let gate = GateParams::new(GateKind::TwoQubitPhase, 0.02);
        let err = holonomy_stokes(&gate, PI, PI / 2.0, 21);
        assert!(matches!(
            err,
            Err(HolonomyError::NonCommutingConnection { .. })
        ));
    }

    #[test]
    fn too_few_steps_rejected() {
        let gate = GateParams::new(GateKind::Gate1, 0.02);
        let lp = ParameterLoop::triangle(PI, PI);
        assert!(matches!(
            holonomy_path_ordered(&gate, &lp, 50, None),
            Err(HolonomyError::TooFewSteps { .. })
        ));
    }

    #[test]
    fn apply_rejects_bright_states() {
        let gate = GateParams::new(GateKind::Gate1, 0.02);
        let lp = ParameterLoop::triangle(PI, PI);
        let hol = holonomy_path_ordered(&gate, &lp, 400, None).unwrap();
        let ground = StateVector::basis_state(gate.basis(), 0);
        assert!(matches!(
            hol.apply(&ground),
            Err(HolonomyError::NotInDarkSubspace { .. })
        ));
    }

    #[test]
    fn gate2_holonomy_rotates_e_plus_toward_e_minus() {
        // flux-π/4 loop: |E⁺⟩ → (|E⁺⟩ + |E⁻⟩)/√2
        let gate = GateParams::new(GateKind::Gate2, 0.02);
        let theta_m = 1.4271486761556402;
        let lp = ParameterLoop::triangle(theta_m, theta_m);
        let hol = holonomy_path_ordered(&gate, &lp, 3000, None).unwrap();
        let e_plus = StateVector::basis_state(gate.basis(), 1);
        let out = hol.apply(&e_plus).unwrap();
        let mut target_amps = ndarray::Array1::zeros(4);
        target_amps[1] = C64::new(1.0 / 2f64.sqrt(), 0.0);
        target_amps[2] = C64::new(1.0 / 2f64.sqrt(), 0.0);
        let target = StateVector::new(gate.basis(), target_amps).unwrap();
        assert!(fidelity(&target, &out).unwrap() > 1.0 - 1e-9);
    }
}
