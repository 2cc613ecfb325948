use ndarray::Array2;

use crate::hamiltonians::GateParams;
use crate::quantum::C64;

use super::frame::{analytic_frame, DarkFrame};
use super::{HolonomyError, Result};

/// The Wilczek-Zee connection at one control point: one anti-Hermitian k×k
/// matrix per loop coordinate, `(A_μ)_{αβ} = ⟨D_α|∂_μ D_β⟩`.
#[derive(Clone, Debug)]
pub struct ConnectionSample {
    pub point: Vec<f64>,
    pub components: Vec<Array2<C64>>,
}

fn antihermitize(m: &Array2<C64>) -> Array2<C64> {
    let md = m.mapv(|c| c.conj()).t().to_owned();
    (m - &md) * C64::new(0.5, 0.0)
}

/// Minimum allowed smallest singular value of successive frame overlaps.
pub const MIN_STEP_OVERLAP: f64 = 0.99;

fn min_overlap_singular_value(m: &Array2<C64>) -> f64 {
    let gram = m.mapv(|c| c.conj()).t().dot(m);
    let (vals, _) = crate::quantum::eigh(&gram).expect("gram is Hermitian");
    vals[0].max(0.0).sqrt()
}

/// Central-difference connection along one coordinate from a gauge-aligned
/// frame sequence at uniform spacing `step`.
///
/// Returns one sample per interior frame. Errors when any successive overlap
/// singular value drops below [`MIN_STEP_OVERLAP`].
pub fn connection_fd(
    frames: &[DarkFrame],
    coord_index: usize,
    step: f64,
) -> Result<Vec<ConnectionSample>> {
    for w in frames.windows(2) {
        let sv = min_overlap_singular_value(&w[0].overlap(&w[1]));
        if sv < MIN_STEP_OVERLAP {
            return Err(HolonomyError::PathTooCoarse {
                overlap: sv,
                required: MIN_STEP_OVERLAP,
            });
        }
    }
    let mut out = Vec::with_capacity(frames.len().saturating_sub(2));
    for i in 1..frames.len().saturating_sub(1) {
        let fwd = frames[i].overlap(&frames[i + 1]);
        let bwd = frames[i].overlap(&frames[i - 1]);
        let diff = (&fwd - &bwd) / C64::new(2.0 * step, 0.0);
        let a = antihermitize(&diff);
        let mut components = vec![Array2::zeros(a.dim()); frames[i].point().len()];
        components[coord_index] = a;
        out.push(ConnectionSample {
            point: frames[i].point().to_vec(),
            components,
        });
    }
    Ok(out)
}

/// Connection of a gate schedule at a point, by central differences of the
/// analytic frames (which fixes the gauge globally).
pub fn connection_at(gate: &GateParams, theta: f64, phi: f64, h: f64) -> ConnectionSample {
    let center = analytic_frame(gate, theta, phi);
    let mut components = Vec::new();
    let n_coords = gate.kind.coords().len();
    for mu in 0..n_coords {
        let (mut lo, mut hi) = ((theta, phi), (theta, phi));
        if mu == 0 {
            lo.0 -= h;
            hi.0 += h;
        } else {
            lo.1 -= h;
            hi.1 += h;
        }
        let fwd = center.overlap(&analytic_frame(gate, hi.0, hi.1));
        let bwd = center.overlap(&analytic_frame(gate, lo.0, lo.1));
        let diff = (&fwd - &bwd) / C64::new(2.0 * h, 0.0);
        components.push(antihermitize(&diff));
    }
    ConnectionSample {
        point: vec![theta, phi],
        components,
    }
}

/// Connection samples on a uniform 2-D (θ, φ) grid in the analytic gauge.
#[derive(Clone, Debug)]
pub struct ConnectionGrid {
    pub theta: Vec<f64>,
    pub phi: Vec<f64>,
    /// `samples[i][j]` at `(theta[i], phi[j])`
    pub samples: Vec<Vec<ConnectionSample>>,
}

pub fn connection_grid(
    gate: &GateParams,
    theta_range: (f64, f64),
    phi_range: (f64, f64),
    n: usize,
    fd_step: f64,
) -> ConnectionGrid {
    let lin = |(a, b): (f64, f64)| -> Vec<f64> {
        (0..n)
            .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
            .collect()
    };
    let theta = lin(theta_range);
    let phi = lin(phi_range);
    let samples = theta
        .iter()
        .map(|&t| phi.iter().map(|&p| connection_at(gate, t, p, fd_step)).collect())
        .collect();
    ConnectionGrid {
        theta,
        phi,
        samples,
    }
}

/// Curvature field `F_{θφ} = ∂_θ A_φ − ∂_φ A_θ + [A_θ, A_φ]` on the interior
/// of a [`ConnectionGrid`], with a Richardson-style coarseness diagnostic.
#[derive(Clone, Debug)]
pub struct CurvatureField {
    pub theta: Vec<f64>,
    pub phi: Vec<f64>,
    pub f_theta_phi: Vec<Vec<Array2<C64>>>,
    /// worst commutator norm over the grid
    pub max_commutator: f64,
    /// worst change when the finite-difference stencil is doubled
    pub refinement_defect: f64,
}

pub fn curvature(grid: &ConnectionGrid, defect_tolerance: f64) -> Result<CurvatureField> {
    let n_t = grid.theta.len();
    let n_p = grid.phi.len();
    let dt = grid.theta[1] - grid.theta[0];
    let dp = grid.phi[1] - grid.phi[0];
    let a = |i: usize, j: usize, mu: usize| -> &Array2<C64> { &grid.samples[i][j].components[mu] };
    let has_phi = grid.samples[0][0].components.len() > 1;

    let mut field = Vec::new();
    let mut theta_out = Vec::new();
    let mut max_comm = 0.0f64;
    let mut defect = 0.0f64;
    for i in 2..n_t.saturating_sub(2) {
        let mut row = Vec::new();
        for j in 2..n_p.saturating_sub(2) {
            let da_phi_dt = if has_phi {
                (a(i + 1, j, 1) - a(i - 1, j, 1)) / C64::new(2.0 * dt, 0.0)
            } else {
                Array2::zeros(a(i, j, 0).dim())
            };
            let da_theta_dp = (a(i, j + 1, 0) - a(i, j - 1, 0)) / C64::new(2.0 * dp, 0.0);
            let comm = if has_phi {
                let at = a(i, j, 0);
                let ap = a(i, j, 1);
                at.dot(ap) - ap.dot(at)
            } else {
                Array2::zeros(a(i, j, 0).dim())
            };
            max_comm = max_comm.max(frob(&comm));
            let f = &da_phi_dt - &da_theta_dp + &comm;

            // doubled-stencil estimate for the coarseness diagnostic
            let da_phi_dt2 = if has_phi {
                (a(i + 2, j, 1) - a(i - 2, j, 1)) / C64::new(4.0 * dt, 0.0)
            } else {
                Array2::zeros(a(i, j, 0).dim())
            };
            let da_theta_dp2 = (a(i, j + 2, 0) - a(i, j - 2, 0)) / C64::new(4.0 * dp, 0.0);
            let f2 = &da_phi_dt2 - &da_theta_dp2 + &comm;
            defect = defect.max(frob(&(&f - &f2)));

            row.push(f);
        }
        field.push(row);
        theta_out.push(grid.theta[i]);
    }
    if defect > defect_tolerance {
        return Err(HolonomyError::GridTooCoarse { defect });
    }
    Ok(CurvatureField {
        theta: theta_out,
        phi: grid.phi[2..n_p.saturating_sub(2)].to_vec(),
        f_theta_phi: field,
        max_commutator: max_comm,
        refinement_defect: defect,
    })
}

/// Pointwise curvature from a small Wilson plaquette of analytic frames.
///
/// The ordered product of overlaps around the `h × h` square centered on
/// `(θ, φ)` estimates `F_{θφ}` to second order in `h` without ever
/// differentiating through a gauge choice.
pub fn curvature_at(gate: &GateParams, theta: f64, phi: f64, h: f64) -> Array2<C64> {
    let (tl, th) = (theta - h / 2.0, theta + h / 2.0);
    let (pl, ph) = (phi - h / 2.0, phi + h / 2.0);
    let corners = [(tl, pl), (th, pl), (th, ph), (tl, ph), (tl, pl)];
    let frames: Vec<DarkFrame> = corners
        .iter()
        .map(|&(t, p)| analytic_frame(gate, t, p))
        .collect();
    let k = frames[0].rank();
    let mut u: Array2<C64> = Array2::eye(k);
    for w in frames.windows(2) {
        let m = w[0].overlap(&w[1]);
        u = u.dot(&m);
    }
    // the overlap product is the transport's dagger: u ≈ exp(+F h²) for the
    // counterclockwise plaquette
    let ud = u.mapv(|c| c.conj()).t().to_owned();
    (&u - &ud) / C64::new(2.0 * h * h, 0.0)
}

/// Worst-case commutator norm over connection samples on the region,
/// including cross-point pairs; the Stokes route demands this be tiny.
pub fn commutation_defect(grid: &ConnectionGrid) -> f64 {
    let mut worst = 0.0f64;
    let flat: Vec<&ConnectionSample> = grid.samples.iter().flatten().collect();
    let stride = (flat.len() / 24).max(1);
    let picks: Vec<&&ConnectionSample> = flat.iter().step_by(stride).collect();
    for (i, sa) in picks.iter().enumerate() {
        for sb in picks.iter().skip(i) {
            for a in &sa.components {
                for b in &sb.components {
                    let c = a.dot(b) - b.dot(a);
                    worst = worst.max(frob(&c));
                }
            }
        }
    }
    worst
}

fn frob(m: &Array2<C64>) -> f64 {
    m.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::{GateKind, GateParams};
    use std::f64::consts::PI;

    #[test]
    fn gate1_connection_phi_component_is_sin_squared_half() {
        let gate = GateParams::new(GateKind::Gate1, 0.02);
        for &theta in &[0.4, 1.0, 2.0, 2.8] {
            let sample = connection_at(&gate, theta, 0.7, 1e-5);
            // A_θ = 0; A_φ diagonal with i sin²(θ/2) on the ψ component
            assert!(frob(&sample.components[0]) < 1e-9, "A_θ at {theta}");
            let a_phi = &sample.components[1];
            let expected = (theta / 2.0).sin().powi(2);
            assert!((a_phi[[1, 1]].im - expected).abs() < 1e-9, "θ = {theta}");
            assert!(a_phi[[0, 0]].norm() < 1e-9);
            assert!(a_phi[[0, 1]].norm() < 1e-9);
        }
    }

    #[test]
    fn entangling_connection_matches_closed_form() {
        let gate = GateParams::new(GateKind::TwoQubitEntangling, 0.02);
        for &theta in &[0.5, 1.3, 2.0, 4.5, 8.0] {
            let sample = connection_at(&gate, theta, 0.0, 1e-5);
            let a = &sample.components[0];
            let s = theta.sin().abs();
            let expected = 0.5 * (s / (1.0 + s)).sqrt();
            // mixing sits between D₁ (index 0) and D₃ (index 2)
            assert!(
                (a[[0, 2]].norm() - expected).abs() < 1e-6,
                "θ = {theta}: {} vs {expected}",
                a[[0, 2]].norm()
            );
            // antisymmetric real generator, D₂ decoupled
            assert!((a[[0, 2]] + a[[2, 0]]).norm() < 1e-9);
            assert!(a[[0, 1]].norm() < 1e-9);
            assert!(a[[1, 2]].norm() < 1e-9);
        }
    }

    #[test]
    fn constant_frame_has_zero_connection() {
        let gate = GateParams::new(GateKind::Gate1, 0.02);
        // frames at a fixed point: zero-extent path
        let f = analytic_frame(&gate, 1.0, 0.5);
        let frames = vec![f.clone(), f.clone(), f];
        let samples = connection_fd(&frames, 0, 1e-3).unwrap();
        assert_eq!(samples.len(), 1);
        assert!(frob(&samples[0].components[0]) < 1e-14);
    }

    #[test]
    fn coarse_path_rejected() {
        let gate = GateParams::new(GateKind::Gate2, 0.02);
        // wildly separated frames: overlap far below threshold
        let frames = vec![
            analytic_frame(&gate, 0.0, 0.0),
            analytic_frame(&gate, 1.5, 0.0),
            analytic_frame(&gate, 3.0, 0.0),
        ];
        let err = connection_fd(&frames, 0, 1.5);
        assert!(matches!(err, Err(HolonomyError::PathTooCoarse { .. })));
    }

    #[test]
    fn gate1_curvature_is_half_sin_theta() {
        let gate = GateParams::new(GateKind::Gate1, 0.02);
        for &theta in &[0.5, 1.2, 2.5] {
            let f = curvature_at(&gate, theta, 0.3, 1e-3);
            // F_{θφ} = (i/2) sinθ on the ψ component
            assert!(
                (f[[1, 1]].im - 0.5 * theta.sin()).abs() < 1e-6,
                "θ = {theta}: {}",
                f[[1, 1]].im
            );
            assert!(f[[0, 0]].norm() < 1e-6);
        }
    }

    #[test]
    fn flat_region_has_zero_curvature() {
        // gate 2 at φ-independent θ = 0 pole: A vanishes identically nearby?
        // use a region where the schedule is constant in φ: gate1 at θ = 0
        let gate = GateParams::new(GateKind::Gate1, 0.02);
        let f = curvature_at(&gate, 0.0, 0.2, 1e-3);
        assert!(frob(&f) < 1e-6);
    }

    #[test]
    fn gate1_grid_curvature_converges() {
        let gate = GateParams::new(GateKind::Gate1, 0.02);
        let grid = connection_grid(&gate, (0.0, PI), (0.0, PI), 41, 1e-5);
        let field = curvature(&grid, 1e-2).unwrap();
        // check one interior value against (i/2) sinθ
        let i = field.theta.len() / 2;
        let f = &field.f_theta_phi[i][0];
        assert!((f[[1, 1]].im - 0.5 * field.theta[i].sin()).abs() < 2e-3);
        assert!(field.max_commutator < 1e-12);
    }

    #[test]
    fn phase_gate_connection_components_do_not_commute() {
        let gate = GateParams::new(GateKind::TwoQubitPhase, 0.02);
        let grid = connection_grid(&gate, (0.3, 2.8), (0.1, 1.4), 9, 1e-5);
        assert!(commutation_defect(&grid) > 1e-3);
    }

    #[test]
    fn single_qubit_gate_connections_commute() {
        for kind in [GateKind::Gate1, GateKind::Gate2] {
            let gate = GateParams::new(kind, 0.02);
            let grid = connection_grid(&gate, (0.1, 2.9), (0.05, 1.5), 9, 1e-5);
            assert!(commutation_defect(&grid) < 1e-8, "{kind:?}");
        }
    }
}
