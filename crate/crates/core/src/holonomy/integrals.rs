use std::f64::consts::PI;

use super::{HolonomyError, Result};

/// `½ √(|sinθ| / (1 + |sinθ|))`, the dark-frame mixing rate of the
/// entangling loop.
pub fn alpha_integrand(theta: f64) -> f64 {
    let s = theta.sin().abs();
    0.5 * (s / (1.0 + s)).sqrt()
}

/// Recursive adaptive Simpson quadrature.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = simpson(f, a, fa, m, fm, flm);
        let right = simpson(f, m, fm, b, fb, frm);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            recurse(f, a, fa, m, fm, flm, left, tol / 2.0, depth - 1)
                + recurse(f, m, fm, b, fb, frm, right, tol / 2.0, depth - 1)
        }
    }
    let fa = f(a);
    let fb = f(b);
    let fm = f(0.5 * (a + b));
    let whole = simpson(f, a, fa, b, fb, fm);
    recurse(f, a, fa, b, fb, fm, whole, tol, 40)
}

/// `∫ ½√(|sinθ|/(1+|sinθ|)) dθ` over `[a, b]`, split at multiples of π where
/// the integrand has kinks.
pub fn alpha_integral_over(a: f64, b: f64) -> f64 {
    let mut cuts = vec![a];
    let mut k = (a / PI).floor() + 1.0;
    while k * PI < b - 1e-12 {
        if k * PI > a + 1e-12 {
            cuts.push(k * PI);
        }
        k += 1.0;
    }
    cuts.push(b);
    cuts.windows(2)
        .map(|w| adaptive_simpson(&alpha_integrand, w[0], w[1], 1e-10))
        .sum()
}

/// The entangling-gate rotation angle `α = ∫₀^{4π} ½√(|sinθ|/(1+|sinθ|)) dθ`.
pub fn alpha_integral() -> f64 {
    alpha_integral_over(0.0, 4.0 * PI)
}

/// Closed-form loop area factor `½·(φ_m/θ_m)·(sinθ_m − θ_m·cosθ_m)` of the
/// triangle family; equals the gate-1 holonomy phase for that loop.
pub fn solid_angle(theta_m: f64, phi_m: f64) -> f64 {
    if theta_m == 0.0 {
        return 0.0;
    }
    0.5 * (phi_m / theta_m) * (theta_m.sin() - theta_m * theta_m.cos())
}

/// Same quantity by quadrature: `½ ∬ sinθ dθ dφ` over the triangle region
/// with φ-width `(φ_m/θ_m)·θ`.
pub fn solid_angle_quadrature(theta_m: f64, phi_m: f64) -> f64 {
    if theta_m == 0.0 {
        return 0.0;
    }
    let slope = phi_m / theta_m;
    adaptive_simpson(&|t: f64| 0.5 * t.sin() * slope * t, 0.0, theta_m, 1e-12)
}

/// Root of `solid_angle(θ_m, θ_m) = target` on `(0, π]`; the loop-size dial
/// used by the gate presets.
pub fn theta_for_solid_angle(target: f64) -> Result<f64> {
    let max = solid_angle(PI, PI);
    if !(target > 0.0) || target > max {
        return Err(HolonomyError::TargetOutOfRange(target, 0.0, max));
    }
    // f(θ) = ½(sinθ − θcosθ) increases monotonically on [0, π]
    let (mut lo, mut hi) = (0.0f64, PI);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if solid_angle(mid, mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
