use rayon::prelude::*;
use serde::Serialize;

use super::{run_cell, CellOutcome, Metric, ScanSettings};
use crate::error::SweepError;
use crate::model::{GeometryParams, PhysicalParams, StateLabel, SUBSPACE_LABELS};

/// Evenly spaced closed interval `[start, end]` with `points` nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(start: f64, end: f64, points: usize) -> Self {
        Axis { start, end, points }
    }

    /// Default `z0` axis: 0 to 20 µm at 101 points.
    pub fn default_z0() -> Self {
        Axis::new(0.0, 20e-6, 101)
    }

    /// Default `d` axis: 0 to 40 µm at 101 points.
    pub fn default_d() -> Self {
        Axis::new(0.0, 40e-6, 101)
    }

    pub fn validate(&self, name: &str) -> Result<(), SweepError> {
        if !(self.start.is_finite() && self.end.is_finite() && self.end > self.start) {
            return Err(SweepError::InvalidInput(format!("{name} range must have positive length")));
        }
        if self.points < 2 {
            return Err(SweepError::InvalidInput(format!("{name} resolution must be >= 2")));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.points - 1;
        let step = (self.end - self.start) / n as f64;
        (0..=n)
            .map(|k| if k == n { self.end } else { self.start + k as f64 * step })
            .collect()
    }
}

/// Per-cell outcomes of a `(z0, d)` scan, row-major with `z0` as rows.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub z0_axis: Vec<f64>,
    pub d_axis: Vec<f64>,
    /// `None` marks a cell whose integration failed.
    pub cells: Vec<Option<CellOutcome>>,
    pub target_angle: f64,
}

impl ScanResult {
    pub fn cell(&self, row: usize, col: usize) -> Option<&CellOutcome> {
        self.cells[row * self.d_axis.len() + col].as_ref()
    }

    pub fn invalid_cells(&self) -> usize {
        self.cells.iter().filter(|c| c.is_none()).count()
    }

    pub fn grid(&self, metric: Metric) -> SweepGrid {
        SweepGrid {
            metric,
            z0_axis: self.z0_axis.clone(),
            d_axis: self.d_axis.clone(),
            values: self
                .cells
                .iter()
                .map(|c| c.as_ref().map_or(f64::NAN, |c| metric.value(c)))
                .collect(),
        }
    }
}

/// A single metric over the `(z0, d)` plane; NaN marks invalid cells.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub metric: Metric,
    pub z0_axis: Vec<f64>,
    pub d_axis: Vec<f64>,
    /// Row-major, `values[row * d_axis.len() + col]`.
    pub values: Vec<f64>,
}

impl SweepGrid {
    pub fn value(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.d_axis.len() + col]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks(self.d_axis.len())
    }
}

/// Propagates every `(z0, d)` cell of the grid; other geometry fields come
/// from `template`.
pub fn scan(
    template: &GeometryParams,
    p: &PhysicalParams,
    z0: Axis,
    d: Axis,
    settings: &ScanSettings,
) -> Result<ScanResult, SweepError> {
    z0.validate("z0")?;
    d.validate("d")?;
    settings
        .integrator
        .validate_tolerances()
        .map_err(|e| SweepError::InvalidInput(e.to_string()))?;
    let z0_axis = z0.values();
    let d_axis = d.values();
    let cols = d_axis.len();
    let cells = (0..z0_axis.len() * cols)
        .into_par_iter()
        .map(|k| {
            let g = GeometryParams { z0: z0_axis[k / cols], d: d_axis[k % cols], ..*template };
            run_cell(&g, p, settings).ok()
        })
        .collect();
    Ok(ScanResult { z0_axis, d_axis, cells, target_angle: settings.target_angle })
}

pub fn scan2d(
    template: &GeometryParams,
    p: &PhysicalParams,
    z0: Axis,
    d: Axis,
    settings: &ScanSettings,
    metric: Metric,
) -> Result<SweepGrid, SweepError> {
    Ok(scan(template, p, z0, d, settings)?.grid(metric))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatingPoint {
    pub z0: f64,
    pub d: f64,
    pub row: usize,
    pub col: usize,
    pub objective: f64,
    #[serde(skip)]
    pub outcome: CellOutcome,
}

impl OperatingPoint {
    pub fn populations(&self) -> Vec<(StateLabel, f64)> {
        SUBSPACE_LABELS.iter().copied().zip(self.outcome.populations).collect()
    }
}

/// Argmin of `|0.5 − P(|g1,g2,0⟩)| + weight · (intermediate sum)`. Ties go
/// to the smaller `d`, then the smaller `z0`.
pub fn find_operating_point(result: &ScanResult, weight: f64) -> Result<OperatingPoint, SweepError> {
    let rows = result.z0_axis.len();
    let cols = result.d_axis.len();
    let mut best: Option<OperatingPoint> = None;
    for col in 0..cols {
        for row in 0..rows {
            let Some(cell) = result.cell(row, col) else { continue };
            let objective = cell.objective(weight);
            if !objective.is_finite() {
                continue;
            }
            if best.as_ref().is_none_or(|b| objective < b.objective) {
                best = Some(OperatingPoint {
                    z0: result.z0_axis[row],
                    d: result.d_axis[col],
                    row,
                    col,
                    objective,
                    outcome: *cell,
                });
            }
        }
    }
    best.ok_or(SweepError::NoViablePoint)
}
