use serde::{Deserialize, Serialize};

use super::{HolonomyError, Result};

/// A point in the control manifold (coordinate values in loop order,
/// e.g. `[θ, φ]`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ControlPoint {
    pub coords: Vec<f64>,
}

impl ControlPoint {
    pub fn new(coords: impl Into<Vec<f64>>) -> Self {
        Self {
            coords: coords.into(),
        }
    }

    pub fn theta(&self) -> f64 {
        self.coords[0]
    }

    pub fn phi(&self) -> f64 {
        *self.coords.get(1).unwrap_or(&0.0)
    }

    pub fn distance(&self, other: &ControlPoint) -> f64 {
        self.coords
            .iter()
            .zip(other.coords.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// A straight segment between two control points.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LoopSegment {
    pub from: Vec<f64>,
    pub to: Vec<f64>,
}

impl LoopSegment {
    pub fn length(&self) -> f64 {
        ControlPoint::new(self.from.clone()).distance(&ControlPoint::new(self.to.clone()))
    }

    pub fn at(&self, r: f64) -> ControlPoint {
        ControlPoint::new(
            self.from
                .iter()
                .zip(self.to.iter())
                .map(|(a, b)| a + (b - a) * r)
                .collect::<Vec<f64>>(),
        )
    }
}

/// A closed, piecewise-linear path in the control manifold.
///
/// Segment boundaries double as kink markers: discretizations and
/// quadratures never step across them, so schedules with non-smooth points
/// (the `√|sin θ|` couplings) place those points on boundaries.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ParameterLoop {
    pub coord_names: Vec<String>,
    pub segments: Vec<LoopSegment>,
}

impl ParameterLoop {
    pub fn new(coord_names: Vec<String>, segments: Vec<LoopSegment>) -> Result<Self> {
        let lp = Self {
            coord_names,
            segments,
        };
        let gap = lp.closure_gap();
        if gap > 1e-12 {
            return Err(HolonomyError::NotClosed(gap));
        }
        Ok(lp)
    }

    fn closure_gap(&self) -> f64 {
        let mut worst = 0.0f64;
        for w in self.segments.windows(2) {
            worst = worst.max(
                ControlPoint::new(w[0].to.clone()).distance(&ControlPoint::new(w[1].from.clone())),
            );
        }
        if let (Some(first), Some(last)) = (self.segments.first(), self.segments.last()) {
            worst = worst
                .max(ControlPoint::new(last.to.clone()).distance(&ControlPoint::new(first.from.clone())));
        }
        worst
    }

    /// The clockwise triangle family: diagonal rise `(0,0) → (θ_m, φ_m)`,
    /// descent along `φ` at `θ_m`, return along `θ` at `φ = 0`.
    pub fn triangle(theta_m: f64, phi_m: f64) -> Self {
        Self {
            coord_names: vec!["theta".into(), "phi".into()],
            segments: vec![
                LoopSegment {
                    from: vec![0.0, 0.0],
                    to: vec![theta_m, phi_m],
                },
                LoopSegment {
                    from: vec![theta_m, phi_m],
                    to: vec![theta_m, 0.0],
                },
                LoopSegment {
                    from: vec![theta_m, 0.0],
                    to: vec![0.0, 0.0],
                },
            ],
        }
    }

    /// One-coordinate sweep `θ: 0 → θ_max`, split at multiples of π.
    ///
    /// Closed whenever the driving schedule is 2π- or 4π-periodic in θ, as
    /// the entangling schedule is over `[0, 4π]`.
    pub fn theta_sweep(theta_max: f64) -> Self {
        let n = (theta_max / std::f64::consts::PI).round().max(1.0) as usize;
        let step = theta_max / n as f64;
        let segments = (0..n)
            .map(|k| LoopSegment {
                from: vec![k as f64 * step],
                to: vec![(k + 1) as f64 * step],
            })
            .collect();
        Self {
            coord_names: vec!["theta".into()],
            segments,
        }
    }

    pub fn dim(&self) -> usize {
        self.coord_names.len()
    }

    pub fn total_length(&self) -> f64 {
        self.segments.iter().map(LoopSegment::length).sum()
    }

    pub fn start(&self) -> ControlPoint {
        ControlPoint::new(self.segments[0].from.clone())
    }

    /// Point at arclength `s ∈ [0, total_length]`.
    pub fn at_arclength(&self, s: f64) -> ControlPoint {
        let mut remaining = s.max(0.0);
        for seg in &self.segments {
            let len = seg.length();
            if remaining <= len || len == 0.0 {
                let r = if len > 0.0 { remaining / len } else { 0.0 };
                return seg.at(r.min(1.0));
            }
            remaining -= len;
        }
        ControlPoint::new(self.segments.last().unwrap().to.clone())
    }

    /// Closed discretization: `steps` points distributed across segments in
    /// proportion to arclength (at least 2 per segment), segment boundaries
    /// always included, and the start point appended again at the end.
    pub fn discretize(&self, steps: usize) -> Vec<ControlPoint> {
        let total = self.total_length();
        let mut points = Vec::with_capacity(steps + self.segments.len() + 1);
        for seg in &self.segments {
            let share = if total > 0.0 {
                (steps as f64 * seg.length() / total).round() as usize
            } else {
                steps / self.segments.len()
            };
            let n = share.max(2);
            for k in 0..n {
                points.push(seg.at(k as f64 / n as f64));
            }
        }
        points.push(self.start());
        points
    }

    pub fn reversed(&self) -> Self {
        Self {
            coord_names: self.coord_names.clone(),
            segments: self
                .segments
                .iter()
                .rev()
                .map(|s| LoopSegment {
                    from: s.to.clone(),
                    to: s.from.clone(),
                })
                .collect(),
        }
    }

    /// Arclength fraction boundaries of each segment, for time maps.
    pub fn segment_boundaries(&self) -> Vec<f64> {
        let total = self.total_length();
        let mut acc = 0.0;
        let mut out = vec![0.0];
        for seg in &self.segments {
            acc += seg.length();
            out.push(if total > 0.0 { acc / total } else { 1.0 });
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn triangle_is_closed_and_clockwise() {
        let lp = ParameterLoop::triangle(PI, PI);
        assert_eq!(lp.segments.len(), 3);
        assert!(lp.closure_gap() < 1e-15);
        assert_eq!(lp.start().coords, vec![0.0, 0.0]);
        // first motion raises both coordinates
        let p = lp.at_arclength(0.1);
        assert!(p.theta() > 0.0 && p.phi() > 0.0);
    }

    #[test]
    fn theta_sweep_splits_at_pi() {
        let lp = ParameterLoop::theta_sweep(4.0 * PI);
        assert_eq!(lp.segments.len(), 4);
        assert!((lp.segments[1].from[0] - PI).abs() < 1e-15);
    }

    #[test]
    fn discretization_closes_and_respects_boundaries() {
        let lp = ParameterLoop::triangle(PI, PI / 2.0);
        let pts = lp.discretize(300);
        assert_eq!(pts.first().unwrap(), pts.last().unwrap());
        // corner (θ_m, φ_m) present
        assert!(pts
            .iter()
            .any(|p| (p.theta() - PI).abs() < 1e-12 && (p.phi() - PI / 2.0).abs() < 1e-12));
        let max_step = pts
            .windows(2)
            .map(|w| w[0].distance(&w[1]))
            .fold(0.0f64, f64::max);
        assert!(max_step < 0.05);
    }

    #[test]
    fn reversal_swaps_orientation() {
        let lp = ParameterLoop::triangle(1.0, 1.0);
        let rev = lp.reversed();
        assert!(rev.closure_gap() < 1e-15);
        assert_eq!(rev.segments[0].from, lp.segments[2].to);
    }

    #[test]
    fn open_path_rejected() {
        let err = ParameterLoop::new(
            vec!["theta".into()],
            vec![LoopSegment {
                from: vec![0.0],
                to: vec![1.0],
            }],
        );
        assert!(matches!(err, Err(HolonomyError::NotClosed(_))));
    }

    #[test]
    fn json_round_trip() {
        let lp = ParameterLoop::triangle(PI, PI / 2.0);
        let json = serde_json::to_string(&lp).unwrap();
        let back: ParameterLoop = serde_json::from_str(&json).unwrap();
        assert_eq!(back.segments.len(), 3);
        assert_eq!(back.coord_names, lp.coord_names);
    }
}
