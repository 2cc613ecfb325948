use std::f64::consts::PI;

use ndarray::Array2;

use crate::hamiltonians::{effective_two_photon_rabi, TwoDotParams};
use crate::quantum::{BasisLabels, StateVector, C64};

use super::integrator::{integrate, IntegrationOptions, SimulationTrace};
use super::{DynamicsError, Result};

/// Smooth sin² drive turn-on; removes the switch-on transient that would
/// otherwise double the off-resonant intermediate amplitude.
pub const DEFAULT_RAMP_FS: f64 = 200.0;

fn envelope(t: f64, ramp: f64) -> f64 {
    if t >= ramp {
        1.0
    } else {
        let x = (0.5 * PI * t / ramp).sin();
        x * x
    }
}

/// Side-by-side validation of the two-photon effective model against the
/// full two-dot simulation.
#[derive(Clone, Debug)]
pub struct TwoPhotonRun {
    pub full_trace: SimulationTrace,
    pub effective_trace: SimulationTrace,
    /// angular frequency of the observed |GG⟩↔|EE⟩ population oscillation
    pub observed_frequency: f64,
    /// `2·Ω̃₁·Ω̃₂/δ`
    pub predicted_frequency: f64,
    pub relative_mismatch: f64,
    /// max P(EG) + P(GE) over the full run
    pub max_intermediate_population: f64,
    pub crossings: usize,
}

/// Simulates the driven two-dot system from `|GG⟩` and extracts the
/// two-photon Rabi frequency from the half-population crossings of
/// `P(EE)`, comparing with second-order prediction and with the resonant
/// two-level effective model.
///
/// Needs at least three full oscillations inside `t_total`; extend the run
/// otherwise.
pub fn two_photon_validation(
    params: &TwoDotParams,
    t_total: f64,
    ramp: f64,
) -> Result<TwoPhotonRun> {
    let predicted = effective_two_photon_rabi(params.rabi_1, params.rabi_2, params.biexciton_shift)?;

    let labels = TwoDotParams::labels();
    let psi0 = StateVector::basis_state(labels.clone(), 0);
    let mut opts = IntegrationOptions::new(IntegrationOptions::default_dt(
        params.norm_bound(),
        t_total,
    ));
    opts.max_samples = 6001;
    let full_trace = integrate(
        |t, m: &mut Array2<C64>| params.fill_matrix(t, envelope(t, ramp), m),
        &labels,
        &psi0,
        t_total,
        &opts,
    )?;

    // resonant effective two-level model |GG⟩, |EE⟩ at the same time grid;
    // the coupling rides the squared field envelope
    let eff_labels = BasisLabels::new(["GG", "EE"]).unwrap();
    let eff_psi0 = StateVector::basis_state(eff_labels.clone(), 0);
    let e_ee = 2.0 * params.exciton_energy + params.biexciton_shift;
    let two_omega = 2.0 * params.laser_frequency;
    let mut eff_opts = IntegrationOptions::new(opts.dt);
    eff_opts.max_samples = 6001;
    let effective_trace = integrate(
        |t, m: &mut Array2<C64>| {
            m.fill(C64::ZERO);
            m[[1, 1]] = C64::new(e_ee, 0.0);
            let env = envelope(t, ramp);
            let g = C64::from_polar(0.5 * predicted * env * env, -two_omega * t) * (-1.0);
            m[[1, 0]] = g;
            m[[0, 1]] = g.conj();
        },
        &eff_labels,
        &eff_psi0,
        t_total,
        &eff_opts,
    )?;

    let max_intermediate_population = full_trace
        .populations
        .iter()
        .map(|p| p[1] + p[2])
        .fold(0.0f64, f64::max);

    // half-population crossings of P(EE), linearly interpolated
    let mut crossings = Vec::new();
    for w in full_trace
        .times
        .iter()
        .zip(full_trace.populations.iter())
        .collect::<Vec<_>>()
        .windows(2)
    {
        let (t0, p0) = (w[0].0, w[0].1[3] - 0.5);
        let (t1, p1) = (w[1].0, w[1].1[3] - 0.5);
        if p0 == 0.0 || p0.signum() != p1.signum() {
            crossings.push(t0 - p0 * (t1 - t0) / (p1 - p0));
        }
    }
    if crossings.len() < 4 {
        return Err(DynamicsError::ExtendT {
            needed: 4,
            t_total,
        });
    }
    let gaps: Vec<f64> = crossings.windows(2).map(|w| w[1] - w[0]).collect();
    let mean_gap = gaps.iter().sum::<f64>() / gaps.len() as f64;
    // crossings sit half a population period apart
    let observed_frequency = PI / mean_gap;
    let relative_mismatch = (observed_frequency - predicted).abs() / predicted;

    Ok(TwoPhotonRun {
        full_trace,
        effective_trace,
        observed_frequency,
        predicted_frequency: predicted,
        relative_mismatch,
        max_intermediate_population,
        crossings: crossings.len(),
    })
}

/// Enough time for `periods` full population oscillations at the predicted
/// two-photon frequency.
pub fn suggested_duration(params: &TwoDotParams, periods: f64) -> f64 {
    let f = effective_two_photon_rabi(params.rabi_1, params.rabi_2, params.biexciton_shift)
        .unwrap_or(1e-6)
        .max(1e-12);
    periods * 2.0 * PI / f
}
