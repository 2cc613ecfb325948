use serde::{Deserialize, Serialize};

use crate::hamiltonians::GateParams;
use crate::holonomy::{ControlPoint, ParameterLoop};
use crate::quantum::{HermitianOperator, C64};

use super::Result;

/// How loop arclength is distributed over `[0, T]`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TimeMap {
    /// constant speed along the whole loop
    UniformArclength,
    /// per-segment 7th-order smoothstep: velocity and its first two
    /// derivatives vanish at every segment boundary, which tames the
    /// √|sinθ| cusps of the two-qubit schedules
    SmoothSegments,
}

fn smoothstep7(r: f64) -> f64 {
    let r = r.clamp(0.0, 1.0);
    let r2 = r * r;
    r2 * r2 * (35.0 - 84.0 * r + 70.0 * r2 - 20.0 * r2 * r)
}

/// A gate's control loop swept over a total time `T` (fs).
///
/// `H(0) = H(T)` by construction (closed loop); the dimensionless
/// adiabaticity parameter is `Ω_scale · T`.
#[derive(Clone, Debug)]
pub struct AdiabaticSchedule {
    pub gate: GateParams,
    pub loop_: ParameterLoop,
    pub total_time: f64,
    pub time_map: TimeMap,
}

impl AdiabaticSchedule {
    pub fn new(gate: GateParams, loop_: ParameterLoop, total_time: f64, time_map: TimeMap) -> Self {
        Self {
            gate,
            loop_,
            total_time,
            time_map,
        }
    }

    pub fn omega_t(&self) -> f64 {
        self.gate.omega_scale * self.total_time
    }

    /// Control point at time `t ∈ [0, T]`.
    pub fn point_at(&self, t: f64) -> ControlPoint {
        let x = (t / self.total_time).clamp(0.0, 1.0);
        let total = self.loop_.total_length();
        match self.time_map {
            TimeMap::UniformArclength => self.loop_.at_arclength(x * total),
            TimeMap::SmoothSegments => {
                // time share per segment proportional to arclength, eased
                // within each segment
                let bounds = self.loop_.segment_boundaries();
                let seg = bounds
                    .windows(2)
                    .position(|w| x >= w[0] && x <= w[1])
                    .unwrap_or(self.loop_.segments.len() - 1);
                let (lo, hi) = (bounds[seg], bounds[seg + 1]);
                let r = if hi > lo { (x - lo) / (hi - lo) } else { 0.0 };
                self.loop_.segments[seg].at(smoothstep7(r))
            }
        }
    }

    pub fn hamiltonian_at(&self, t: f64) -> Result<HermitianOperator> {
        let p = self.point_at(t);
        Ok(self.gate.hamiltonian(p.theta(), p.phi())?)
    }

    /// Matrix-filling closure for the integrator hot path.
    pub fn fill_matrix(&self, t: f64, m: &mut ndarray::Array2<C64>) {
        let p = self.point_at(t);
        let h = self
            .gate
            .hamiltonian(p.theta(), p.phi())
            .expect("schedule points are valid");
        m.assign(h.matrix());
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonians::GateKind;
    use std::f64::consts::PI;

    #[test]
    fn schedule_closes() {
        let gate = GateParams::new(GateKind::Gate1, 0.02);
        let sched = AdiabaticSchedule::new(
            gate,
            ParameterLoop::triangle(PI, PI),
            7500.0,
            TimeMap::UniformArclength,
        );
        let h0 = sched.hamiltonian_at(0.0).unwrap();
        let ht = sched.hamiltonian_at(7500.0).unwrap();
        let d = h0
            .matrix()
            .iter()
            .zip(ht.matrix().iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        assert!(d < 1e-12);
        assert!((sched.omega_t() - 150.0).abs() < 1e-12);
    }

    #[test]
    fn smooth_map_pauses_at_segment_boundaries() {
        let gate = GateParams::new(GateKind::TwoQubitEntangling, 0.02);
        let sched = AdiabaticSchedule::new(
            gate,
            ParameterLoop::theta_sweep(4.0 * PI),
            1000.0,
            TimeMap::SmoothSegments,
        );
        // quarter-time boundary sits exactly on θ = π, approached slowly
        let at_boundary = sched.point_at(250.0).theta();
        assert!((at_boundary - PI).abs() < 1e-9);
        let just_before = sched.point_at(249.0).theta();
        let uniform_step = 4.0 * PI / 1000.0;
        assert!((at_boundary - just_before).abs() < 0.1 * uniform_step);
    }

    #[test]
    fn uniform_map_moves_at_constant_speed() {
        let gate = GateParams::new(GateKind::TwoQubitEntangling, 0.02);
        let sched = AdiabaticSchedule::new(
            gate,
            ParameterLoop::theta_sweep(4.0 * PI),
            1000.0,
            TimeMap::UniformArclength,
        );
        let a = sched.point_at(100.0).theta();
        let b = sched.point_at(200.0).theta();
        let c = sched.point_at(300.0).theta();
        assert!(((b - a) - (c - b)).abs() < 1e-12);
    }
}
