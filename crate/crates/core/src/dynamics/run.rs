use std::f64::consts::PI;

use crate::hamiltonians::{GateKind, GateParams};
use crate::holonomy::{
    analytic_frame, holonomy_path_ordered, theta_for_solid_angle, Holonomy, ParameterLoop,
};
use crate::quantum::{fidelity, StateVector};

use super::integrator::{integrate, IntegrationOptions, SimulationTrace};
use super::schedule::{AdiabaticSchedule, TimeMap};
use super::{DynamicsError, Result};

/// Default discretization for the reference holonomy of a gate run.
pub const HOLONOMY_STEPS: usize = 6000;

/// A gate bound to its control loop and time map, ready to run.
#[derive(Clone, Debug)]
pub struct GatePreset {
    pub gate: GateParams,
    pub loop_: ParameterLoop,
    pub time_map: TimeMap,
    /// geometric phase / rotation angle the loop was sized for, if any
    pub target_angle: Option<f64>,
}

/// Standard preset for each gate family.
///
/// * `gate1(φ₁)`: triangle loop sized so the `|E⁺⟩` phase equals `φ₁`
///   (`φ₁ ∈ (0, π/2]`), uniform time map.
/// * `gate2(φ₂)`: triangle loop sized so the rotation angle equals `φ₂`
///   (`φ₂ ∈ (0, π]`; `π/4` is the Hadamard-like superposition gate),
///   uniform time map.
/// * `twoqubit-phase`: the `θ_m = π, φ_m = π/2` loop, smooth time map.
/// * `twoqubit-entangling`: `θ: 0 → 4π` sweep, smooth time map (the
///   uniform map trips over the √|sinθ| cusps and leaks well above the
///   acceptance threshold at Ω·T = 150).
pub fn gate_preset(kind: GateKind, omega_scale: f64, angle: Option<f64>) -> Result<GatePreset> {
    let gate = GateParams::new(kind, omega_scale);
    match kind {
        GateKind::Gate1 => {
            let phi1 = angle.unwrap_or(PI / 4.0);
            let theta_m = theta_for_solid_angle(phi1)?;
            Ok(GatePreset {
                gate,
                loop_: ParameterLoop::triangle(theta_m, theta_m),
                time_map: TimeMap::UniformArclength,
                target_angle: Some(phi1),
            })
        }
        GateKind::Gate2 => {
            let phi2 = angle.unwrap_or(PI / 4.0);
            // rotation angle = enclosed flux = 2·solid_angle
            let theta_m = theta_for_solid_angle(phi2 / 2.0)?;
            Ok(GatePreset {
                gate,
                loop_: ParameterLoop::triangle(theta_m, theta_m),
                time_map: TimeMap::UniformArclength,
                target_angle: Some(phi2),
            })
        }
        GateKind::TwoQubitPhase => Ok(GatePreset {
            gate,
            loop_: ParameterLoop::triangle(PI, PI / 2.0),
            time_map: TimeMap::SmoothSegments,
            target_angle: angle,
        }),
        GateKind::TwoQubitEntangling => Ok(GatePreset {
            gate,
            loop_: ParameterLoop::theta_sweep(4.0 * PI),
            time_map: TimeMap::SmoothSegments,
            target_angle: angle,
        }),
    }
}

impl GatePreset {
    /// Default initial state: the first logical dark state at the loop start
    /// (`|E⁺⟩` for the single-qubit gates, `|++⟩` for the two-qubit ones).
    pub fn default_initial_state(&self) -> StateVector {
        StateVector::basis_state(self.gate.basis(), 1)
    }

    pub fn schedule(&self, t_total: f64) -> AdiabaticSchedule {
        AdiabaticSchedule::new(
            self.gate.clone(),
            self.loop_.clone(),
            t_total,
            self.time_map,
        )
    }

    /// Reference holonomy of this preset's loop.
    pub fn holonomy(&self, steps: usize) -> Result<Holonomy> {
        Ok(holonomy_path_ordered(
            &self.gate,
            &self.loop_,
            steps,
            None,
        )?)
    }
}

/// Outcome of one simulated gate run cross-checked against its holonomy.
#[derive(Clone, Debug)]
pub struct GateRun {
    pub trace: SimulationTrace,
    pub holonomy: Holonomy,
    pub predicted: StateVector,
    pub final_state: StateVector,
    /// `|⟨U_holonomy ψ₀ | ψ_sim(T)⟩|²`
    pub fidelity_vs_holonomy: f64,
    /// max population of the shared ground level over the run
    pub max_ground_population: f64,
    /// max instantaneous population outside the dark subspace
    pub max_leakage: f64,
}

/// Integrates a gate schedule and compares the outcome with the holonomy
/// prediction.
///
/// The initial state must lie in the dark subspace at the loop start
/// (leakage ≤ 1e-6). Leakage along the run is measured against the analytic
/// dark frame at each sampled instant.
pub fn run_gate(preset: &GatePreset, t_total: f64, psi0: &StateVector) -> Result<GateRun> {
    let start = preset.loop_.start();
    let start_frame = analytic_frame(&preset.gate, start.theta(), start.phi());
    let initial_leakage = start_frame.leakage(psi0);
    if initial_leakage > 1e-6 {
        return Err(DynamicsError::InitialStateNotDark {
            leakage: initial_leakage,
        });
    }

    let sched = preset.schedule(t_total);
    let mut opts = IntegrationOptions::new(IntegrationOptions::default_dt(
        preset.gate.norm_bound(),
        t_total,
    ));
    opts.phase_reference = Some(preset.gate.phase_reference_index());
    let trace = integrate(
        |t, m| sched.fill_matrix(t, m),
        &preset.gate.basis(),
        psi0,
        t_total,
        &opts,
    )?;

    let ground = preset.gate.ground_index();
    let max_ground_population = trace.max_population(ground);
    let mut max_leakage = 0.0f64;
    for (t, amps) in trace.times.iter().zip(trace.amplitudes.iter()) {
        let p = sched.point_at(*t);
        let frame = analytic_frame(&preset.gate, p.theta(), p.phi());
        let psi = StateVector::new(trace.labels.clone(), amps.clone())?;
        max_leakage = max_leakage.max(frame.leakage(&psi));
    }

    let holonomy = preset.holonomy(HOLONOMY_STEPS)?;
    let predicted = holonomy.apply(psi0)?;
    let final_state = trace.final_state();
    let fid = fidelity(&predicted, &final_state)?;

    Ok(GateRun {
        trace,
        holonomy,
        predicted,
        final_state,
        fidelity_vs_holonomy: fid,
        max_ground_population,
        max_leakage,
    })
}

#[derive(Clone, Debug)]
pub struct ScanRow {
    pub omega_t: f64,
    pub t_total: f64,
    pub leakage: f64,
    pub infidelity: f64,
}

#[derive(Clone, Debug)]
pub struct AdiabaticityScan {
    pub rows: Vec<ScanRow>,
    /// least-squares slope of ln(leakage) against ln(ΩT)
    pub leakage_log_slope: f64,
    /// least-squares slope of ln(infidelity) against ln(ΩT)
    pub infidelity_log_slope: f64,
}

/// Runs the preset at several adiabaticity parameters `Ω·T` and fits the
/// trend of leakage and infidelity against `Ω·T` on a log-log scale.
pub fn adiabaticity_scan(preset: &GatePreset, omega_t_values: &[f64]) -> Result<AdiabaticityScan> {
    let mut rows = Vec::with_capacity(omega_t_values.len());
    let psi0 = preset.default_initial_state();
    for &omega_t in omega_t_values {
        if omega_t < 1.0 {
            return Err(DynamicsError::BadOmegaT(omega_t));
        }
        let t_total = omega_t / preset.gate.omega_scale;
        let run = run_gate(preset, t_total, &psi0)?;
        rows.push(ScanRow {
            omega_t,
            t_total,
            leakage: run.max_leakage,
            infidelity: (1.0 - run.fidelity_vs_holonomy).max(f64::MIN_POSITIVE),
        });
    }
    let slope = |ys: Vec<f64>| -> f64 {
        let xs: Vec<f64> = rows.iter().map(|r| r.omega_t.ln()).collect();
        let lys: Vec<f64> = ys.iter().map(|y| y.max(1e-300).ln()).collect();
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = lys.iter().sum::<f64>() / n;
        let cov: f64 = xs
            .iter()
            .zip(lys.iter())
            .map(|(x, y)| (x - mx) * (y - my))
            .sum();
        let var: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        cov / var
    };
    let leakage_log_slope = slope(rows.iter().map(|r| r.leakage).collect());
    let infidelity_log_slope = slope(rows.iter().map(|r| r.infidelity).collect());
    Ok(AdiabaticityScan {
        rows,
        leakage_log_slope,
        infidelity_log_slope,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::C64;
    use ndarray::Array1;

    #[test]
    fn gate1_run_accumulates_the_target_phase() {
        let preset = gate_preset(GateKind::Gate1, 0.02, Some(PI / 4.0)).unwrap();
        let psi0 = preset.default_initial_state(); // |E⁺⟩
        let run = run_gate(&preset, 150.0 / 0.02, &psi0).unwrap();
        assert!(run.fidelity_vs_holonomy > 0.98, "{}", run.fidelity_vs_holonomy);
        assert!(run.max_ground_population < 0.02);
        // accumulated phase on the |E⁺⟩ amplitude ends near +π/4
        let final_phase = run
            .trace
            .phase_series
            .last()
            .copied()
            .flatten()
            .expect("reference amplitude is large at the end");
        assert!(
            (final_phase - PI / 4.0).abs() < 0.02,
            "phase {final_phase}"
        );
    }

    #[test]
    fn gate1_leaves_e_minus_untouched() {
        let preset = gate_preset(GateKind::Gate1, 0.02, Some(PI / 4.0)).unwrap();
        let e_minus = StateVector::basis_state(preset.gate.basis(), 2);
        let run = run_gate(&preset, 2000.0, &e_minus).unwrap();
        // decoupled state: population pinned at 1
        let p = run.trace.populations.last().unwrap()[2];
        assert!((p - 1.0).abs() < 1e-9, "P(E⁻) = {p}");
        assert!(run.fidelity_vs_holonomy > 1.0 - 1e-9);
    }

    #[test]
    fn bright_initial_state_rejected() {
        let preset = gate_preset(GateKind::Gate1, 0.02, None).unwrap();
        let mut amps = Array1::zeros(4);
        amps[0] = C64::new(1.0, 0.0); // |G⟩
        let ground = StateVector::new(preset.gate.basis(), amps).unwrap();
        assert!(matches!(
            run_gate(&preset, 1000.0, &ground),
            Err(DynamicsError::InitialStateNotDark { .. })
        ));
    }

    #[test]
    fn scan_rejects_sub_unit_omega_t() {
        let preset = gate_preset(GateKind::Gate1, 0.02, None).unwrap();
        assert!(matches!(
            adiabaticity_scan(&preset, &[0.5]),
            Err(DynamicsError::BadOmegaT(_))
        ));
    }
}
