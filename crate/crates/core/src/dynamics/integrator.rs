use ndarray::{Array1, Array2};

use crate::quantum::{BasisLabels, StateVector, C64};

use super::{DynamicsError, Result};

/// Fixed-step RK4 so traces are bit-reproducible for a given configuration.
#[derive(Clone, Debug)]
pub struct IntegrationOptions {
    /// step size; pick with `dt·max‖H‖ ≤ 0.05`
    pub dt: f64,
    /// at most this many stored samples (decimated uniformly; endpoints kept)
    pub max_samples: usize,
    /// abort when |‖ψ‖ − 1| exceeds this
    pub norm_drift_limit: f64,
    /// basis index whose amplitude argument is recorded where defined
    pub phase_reference: Option<usize>,
}

impl IntegrationOptions {
    pub fn new(dt: f64) -> Self {
        Self {
            dt,
            max_samples: 2001,
            norm_drift_limit: 1e-6,
            phase_reference: None,
        }
    }

    /// Default step for a Hamiltonian of the given norm bound over `[0, T]`:
    /// `min(0.05/‖H‖, T/20000)`.
    pub fn default_dt(norm_bound: f64, t_total: f64) -> f64 {
        let stability = if norm_bound > 0.0 {
            0.05 / norm_bound
        } else {
            f64::INFINITY
        };
        stability.min(t_total / 20_000.0)
    }
}

/// Phase is reported only where the reference amplitude is this large.
pub const PHASE_DEFINED_MIN: f64 = 1e-3;

/// A sampled integration run: populations per basis state, amplitudes, and
/// the accumulated phase of the reference component where defined.
#[derive(Clone, Debug)]
pub struct SimulationTrace {
    pub labels: BasisLabels,
    pub times: Vec<f64>,
    pub amplitudes: Vec<Array1<C64>>,
    pub populations: Vec<Vec<f64>>,
    pub phase_series: Vec<Option<f64>>,
    pub norm_drift: f64,
    pub dt: f64,
    pub steps: usize,
}

impl SimulationTrace {
    pub fn final_state(&self) -> StateVector {
        StateVector::new(
            self.labels.clone(),
            self.amplitudes.last().expect("trace never empty").clone(),
        )
        .expect("normalized within drift limit")
    }

    pub fn max_population(&self, index: usize) -> f64 {
        self.populations
            .iter()
            .map(|p| p[index])
            .fold(0.0, f64::max)
    }

    /// Trapezoid integral of one level's population over the run.
    pub fn population_time_integral(&self, index: usize) -> f64 {
        let mut acc = 0.0;
        for w in self.times.windows(2).zip(self.populations.windows(2)) {
            let (ts, ps) = w;
            acc += 0.5 * (ps[0][index] + ps[1][index]) * (ts[1] - ts[0]);
        }
        acc
    }
}

/// Propagates `iψ̇ = H(t)ψ` with fixed-step RK4.
///
/// `h_of_t` fills the provided buffer with `H(t)`; it is called four times
/// per step. Norm is never renormalized; drift beyond the limit aborts.
pub fn integrate<F>(
    mut h_of_t: F,
    labels: &BasisLabels,
    psi0: &StateVector,
    t_total: f64,
    opts: &IntegrationOptions,
) -> Result<SimulationTrace>
where
    F: FnMut(f64, &mut Array2<C64>),
{
    if !(t_total > 0.0) || !(opts.dt > 0.0) {
        return Err(DynamicsError::BadTiming {
            t_total,
            dt: opts.dt,
        });
    }
    let n = labels.len();
    let steps = (t_total / opts.dt).ceil() as usize;
    let dt = t_total / steps as f64;

    let mut h: Array2<C64> = Array2::zeros((n, n));
    let mut psi = psi0.amplitudes().clone();
    let mut k1: Array1<C64> = Array1::zeros(n);
    let mut k2: Array1<C64> = Array1::zeros(n);
    let mut k3: Array1<C64> = Array1::zeros(n);
    let mut k4: Array1<C64> = Array1::zeros(n);
    let mut tmp: Array1<C64> = Array1::zeros(n);

    let stride = (steps / opts.max_samples.max(2)).max(1);
    let mut trace = SimulationTrace {
        labels: labels.clone(),
        times: Vec::new(),
        amplitudes: Vec::new(),
        populations: Vec::new(),
        phase_series: Vec::new(),
        norm_drift: 0.0,
        dt,
        steps,
    };
    record(&mut trace, 0.0, &psi, opts.phase_reference);

    let minus_i = C64::new(0.0, -1.0);
    let mut deriv = |t: f64,
                     y: &Array1<C64>,
                     out: &mut Array1<C64>,
                     h: &mut Array2<C64>,
                     h_of_t: &mut F| {
        h_of_t(t, h);
        for i in 0..n {
            let mut acc = C64::ZERO;
            for j in 0..n {
                acc += h[[i, j]] * y[j];
            }
            out[i] = minus_i * acc;
        }
    };

    for step in 0..steps {
        let t = step as f64 * dt;
        // stability guard on the first step and periodically after
        if step == 0 || step % 512 == 0 {
            h_of_t(t, &mut h);
            let norm = (0..n)
                .map(|i| h.row(i).iter().map(|c| c.norm()).sum::<f64>())
                .fold(0.0f64, f64::max);
            if dt * norm > 0.0501 {
                return Err(DynamicsError::StepTooCoarse { dt, norm });
            }
        }

        deriv(t, &psi, &mut k1, &mut h, &mut h_of_t);
        for i in 0..n {
            tmp[i] = psi[i] + k1[i] * (0.5 * dt);
        }
        deriv(t + 0.5 * dt, &tmp, &mut k2, &mut h, &mut h_of_t);
        for i in 0..n {
            tmp[i] = psi[i] + k2[i] * (0.5 * dt);
        }
        deriv(t + 0.5 * dt, &tmp, &mut k3, &mut h, &mut h_of_t);
        for i in 0..n {
            tmp[i] = psi[i] + k3[i] * dt;
        }
        deriv(t + dt, &tmp, &mut k4, &mut h, &mut h_of_t);
        for i in 0..n {
            psi[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (dt / 6.0);
        }

        let is_last = step + 1 == steps;
        if (step + 1) % stride == 0 || is_last {
            let t_now = (step + 1) as f64 * dt;
            let norm = psi.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
            let drift = (norm - 1.0).abs();
            trace.norm_drift = trace.norm_drift.max(drift);
            if drift > opts.norm_drift_limit {
                return Err(DynamicsError::NormDrift {
                    drift,
                    limit: opts.norm_drift_limit,
                });
            }
            record(&mut trace, t_now, &psi, opts.phase_reference);
        }
    }
    Ok(trace)
}

fn record(trace: &mut SimulationTrace, t: f64, psi: &Array1<C64>, phase_ref: Option<usize>) {
    trace.times.push(t);
    trace.populations.push(psi.iter().map(|c| c.norm_sqr()).collect());
    trace.phase_series.push(phase_ref.and_then(|i| {
        let c = psi[i];
        (c.norm() > PHASE_DEFINED_MIN).then(|| c.arg())
    }));
    trace.amplitudes.push(psi.clone());
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::fidelity;
    use ndarray::array;

    fn two_labels() -> BasisLabels {
        BasisLabels::new(["G", "E"]).unwrap()
    }

    #[test]
    fn zero_hamiltonian_is_a_no_op() {
        let labels = two_labels();
        let psi0 = StateVector::new(
            labels.clone(),
            array![C64::new(0.8, 0.0), C64::new(0.0, 0.6)],
        )
        .unwrap();
        let trace = integrate(
            |_t, h| h.fill(C64::ZERO),
            &labels,
            &psi0,
            100.0,
            &IntegrationOptions::new(0.5),
        )
        .unwrap();
        assert!(fidelity(&psi0, &trace.final_state()).unwrap() > 1.0 - 1e-14);
        assert!(trace.norm_drift < 1e-14);
    }

    #[test]
    fn static_coupling_produces_rabi_oscillation_at_omega() {
        // H = −Ω(|E⟩⟨G| + |G⟩⟨E|): from |G⟩, P_G(t) = cos²(Ωt)
        let omega = 0.02;
        let labels = two_labels();
        let psi0 = StateVector::basis_state(labels.clone(), 0);
        let t_total = 3.0 * std::f64::consts::PI / omega;
        let trace = integrate(
            |_t, h| {
                h.fill(C64::ZERO);
                h[[0, 1]] = C64::new(-omega, 0.0);
                h[[1, 0]] = C64::new(-omega, 0.0);
            },
            &labels,
            &psi0,
            t_total,
            &IntegrationOptions::new(0.25),
        )
        .unwrap();
        for (t, p) in trace.times.iter().zip(trace.populations.iter()) {
            let expected = (omega * t).cos().powi(2);
            assert!(
                (p[0] - expected).abs() < 1e-7,
                "t = {t}: {} vs {expected}",
                p[0]
            );
        }
    }

    #[test]
    fn bright_eigenstate_only_accumulates_phase() {
        let omega = 0.02;
        let labels = two_labels();
        let psi0 = StateVector::new(
            labels.clone(),
            array![C64::new(1.0, 0.0), C64::new(1.0, 0.0)],
        )
        .unwrap();
        let trace = integrate(
            |_t, h| {
                h.fill(C64::ZERO);
                h[[0, 1]] = C64::new(-omega, 0.0);
                h[[1, 0]] = C64::new(-omega, 0.0);
            },
            &labels,
            &psi0,
            500.0,
            &IntegrationOptions::new(0.25),
        )
        .unwrap();
        assert!(fidelity(&psi0, &trace.final_state()).unwrap() > 1.0 - 1e-10);
    }

    #[test]
    fn coarse_step_rejected() {
        let labels = two_labels();
        let psi0 = StateVector::basis_state(labels.clone(), 0);
        let err = integrate(
            |_t, h| {
                h.fill(C64::ZERO);
                h[[0, 0]] = C64::new(5.0, 0.0);
                h[[1, 1]] = C64::new(5.0, 0.0);
            },
            &labels,
            &psi0,
            10.0,
            &IntegrationOptions::new(1.0),
        );
        assert!(matches!(err, Err(DynamicsError::StepTooCoarse { .. })));
    }

    #[test]
    fn populations_sum_to_norm() {
        let labels = two_labels();
        let psi0 = StateVector::basis_state(labels.clone(), 0);
        let trace = integrate(
            |t, h| {
                h.fill(C64::ZERO);
                let w = C64::from_polar(0.01, 0.02 * t);
                h[[0, 1]] = w;
                h[[1, 0]] = w.conj();
            },
            &labels,
            &psi0,
            2000.0,
            &IntegrationOptions::new(0.5),
        )
        .unwrap();
        for p in &trace.populations {
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-8);
        }
    }
}
