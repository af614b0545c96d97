use rayon::prelude::*;
use serde::Serialize;

use super::{run_cell, ScanSettings};
use crate::error::SweepError;
use crate::model::{GeometryParams, PhysicalParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RobustParameter {
    /// Both atom speeds together.
    V,
    Omega0,
    G0,
    D,
    Z0,
}

impl RobustParameter {
    pub const ALL: [RobustParameter; 5] = [
        RobustParameter::V,
        RobustParameter::Omega0,
        RobustParameter::G0,
        RobustParameter::D,
        RobustParameter::Z0,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RobustParameter::V => "v",
            RobustParameter::Omega0 => "omega0",
            RobustParameter::G0 => "g0",
            RobustParameter::D => "d",
            RobustParameter::Z0 => "z0",
        }
    }

    pub fn parse(text: &str) -> Option<RobustParameter> {
        RobustParameter::ALL.into_iter().find(|p| p.name() == text)
    }

    fn baseline(self, g: &GeometryParams, p: &PhysicalParams) -> f64 {
        match self {
            RobustParameter::V => g.v1,
            RobustParameter::Omega0 => p.omega0,
            RobustParameter::G0 => p.g0,
            RobustParameter::D => g.d,
            RobustParameter::Z0 => g.z0,
        }
    }

    fn scaled(
        self,
        g: &GeometryParams,
        p: &PhysicalParams,
        factor: f64,
    ) -> (GeometryParams, PhysicalParams) {
        let (mut g, mut p) = (*g, *p);
        match self {
            RobustParameter::V => {
                g.v1 *= factor;
                g.v2 *= factor;
            }
            RobustParameter::Omega0 => p.omega0 *= factor,
            RobustParameter::G0 => p.g0 *= factor,
            RobustParameter::D => g.d *= factor,
            RobustParameter::Z0 => g.z0 *= factor,
        }
        (g, p)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RobustnessScan {
    pub parameter: RobustParameter,
    /// Relative offsets from the baseline, `-r ..= r`.
    pub offsets: Vec<f64>,
    /// Absolute parameter values (`v1` for [`RobustParameter::V`]).
    pub values: Vec<f64>,
    /// Final target fidelity; NaN where integration failed.
    pub fidelity: Vec<f64>,
}

impl RobustnessScan {
    pub fn min_fidelity(&self) -> f64 {
        self.fidelity.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Final-state fidelity while scaling one parameter by `1 + offset` for
/// `steps` offsets evenly covering `[-relative_range, relative_range]`.
pub fn robustness_scan(
    g: &GeometryParams,
    p: &PhysicalParams,
    parameter: RobustParameter,
    relative_range: f64,
    steps: usize,
    settings: &ScanSettings,
) -> Result<RobustnessScan, SweepError> {
    if !(0.0..=1.0).contains(&relative_range) {
        return Err(SweepError::InvalidInput("relative_range must lie in [0, 1]".into()));
    }
    if steps == 0 {
        return Err(SweepError::InvalidInput("steps must be >= 1".into()));
    }
    settings
        .integrator
        .validate_tolerances()
        .map_err(|e| SweepError::InvalidInput(e.to_string()))?;
    let offsets: Vec<f64> = if steps == 1 {
        vec![0.0]
    } else {
        let n = (steps - 1) as f64;
        (0..steps).map(|k| -relative_range + 2.0 * relative_range * k as f64 / n).collect()
    };
    let base = parameter.baseline(g, p);
    let values = offsets.iter().map(|o| base * (1.0 + o)).collect();
    let fidelity = offsets
        .par_iter()
        .map(|o| {
            let (g, p) = parameter.scaled(g, p, 1.0 + o);
            run_cell(&g, &p, settings).map_or(f64::NAN, |c| c.fidelity)
        })
        .collect();
    Ok(RobustnessScan { parameter, offsets, values, fidelity })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameter_names_round_trip() {
        for p in RobustParameter::ALL {
            assert_eq!(RobustParameter::parse(p.name()), Some(p));
        }
    }

    #[test]
    fn scaling_touches_only_its_parameter() {
        let g = GeometryParams::reference_stirap();
        let p = PhysicalParams::reference_stirap();
        let (g2, p2) = RobustParameter::V.scaled(&g, &p, 1.2);
        assert_eq!(g2.v1, g.v1 * 1.2);
        assert_eq!(g2.v2, g.v2 * 1.2);
        assert_eq!(p2, p);
        let (g3, p3) = RobustParameter::G0.scaled(&g, &p, 0.8);
        assert_eq!(g3, g);
        assert_eq!(p3.g0, p.g0 * 0.8);
    }

    #[test]
    fn rejects_bad_ranges() {
        let g = GeometryParams::reference_stirap();
        let p = PhysicalParams::reference_stirap();
        let s = ScanSettings::default();
        assert!(robustness_scan(&g, &p, RobustParameter::V, 1.5, 3, &s).is_err());
        assert!(robustness_scan(&g, &p, RobustParameter::V, 0.2, 0, &s).is_err());
    }
}
