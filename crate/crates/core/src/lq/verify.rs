//! Grid check of the eigen-equation `sup_y (A^t_λ<x,y> + h(y)) = h(x)`.
//!
//! The grid is a cube `[-half_width, half_width]^n` with the given spacing.
//! Its maximum is located in two passes: a coarse sub-lattice of the grid
//! first, then the full-resolution grid in windows around the best coarse
//! points. The objective is concave in `y` for the quadratic and horofunction
//! targets, where both passes agree with the exhaustive maximum.

use rayon::prelude::*;
use serde::Serialize;

use super::kernel::finite_horizon_kernel;
use super::{check_lambda, norm2};
use crate::error::{Error, Result};

/// Coarse pass resolution, in points per axis.
const COARSE_POINTS: usize = 200;
/// Number of coarse candidates refined at full resolution.
const REFINED_CANDIDATES: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridSpec {
    pub half_width: f64,
    pub spacing: f64,
}

impl GridSpec {
    pub fn new(half_width: f64, spacing: f64) -> Result<Self> {
        if !(half_width > 0.0) || !(spacing > 0.0) || spacing > 2.0 * half_width {
            return Err(Error::InvalidArgument(format!(
                "grid needs half_width > 0 and 0 < spacing <= 2 half_width, got {half_width}, {spacing}"
            )));
        }
        Ok(GridSpec { half_width, spacing })
    }

    /// Half-width `4 max|probe|` (at least 1) and spacing 0.01.
    pub fn default_for(probes: &[Vec<f64>]) -> Self {
        let r = probes.iter().map(|p| norm2(p).sqrt()).fold(0.0, f64::max);
        GridSpec { half_width: (4.0 * r).max(1.0), spacing: 0.01 }
    }

    fn points_per_axis(&self) -> usize {
        (2.0 * self.half_width / self.spacing).round() as usize + 1
    }

    fn coordinate(&self, i: usize, points: usize) -> f64 {
        -self.half_width + 2.0 * self.half_width * i as f64 / (points - 1) as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbeResult {
    pub probe: Vec<f64>,
    pub sup: f64,
    pub target: f64,
    pub residual: f64,
    pub argmax_location: Vec<f64>,
    pub clipped: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HarmonicReport {
    pub lambda: f64,
    pub t: f64,
    pub grid: GridSpec,
    pub max_residual: f64,
    pub results: Vec<ProbeResult>,
}

impl HarmonicReport {
    pub fn clipped_count(&self) -> usize {
        self.results.iter().filter(|r| r.clipped).count()
    }
}

/// Computes `sup_y A^t_λ<x,y> + h(y)` over the grid for each probe `x` and
/// reports `|sup - h(x)|`.
///
/// Fails with [`Error::GridTooSmall`] (carrying the full report) when some
/// maximizer lies on the boundary of the grid.
pub fn verify_harmonic_lq<F>(
    h: F,
    lambda: f64,
    t: f64,
    probes: &[Vec<f64>],
    grid: GridSpec,
) -> Result<HarmonicReport>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    check_lambda(lambda)?;
    if !(t > 0.0) {
        return Err(Error::NonpositiveHorizon(t));
    }
    let dim = match probes.first() {
        Some(p) => p.len(),
        None => return Err(Error::InvalidArgument("at least one probe is required".into())),
    };
    if dim == 0 || probes.iter().any(|p| p.len() != dim) {
        return Err(Error::InvalidArgument("probes must share a positive dimension".into()));
    }
    let grid = GridSpec::new(grid.half_width, grid.spacing)?;

    let results: Vec<ProbeResult> = probes
        .par_iter()
        .map(|x| {
            let objective = |y: &[f64]| {
                finite_horizon_kernel(x, y, t, lambda).expect("validated arguments") + h(y)
            };
            let (sup, at, clipped) = grid_sup(&objective, dim, &grid);
            let target = h(x);
            ProbeResult {
                probe: x.clone(),
                sup,
                target,
                residual: (sup - target).abs(),
                argmax_location: at,
                clipped,
            }
        })
        .collect();

    let max_residual = results.iter().map(|r| r.residual).fold(0.0, f64::max);
    let report = HarmonicReport { lambda, t, grid, max_residual, results };
    if report.clipped_count() > 0 {
        return Err(Error::GridTooSmall(Box::new(report)));
    }
    Ok(report)
}

/// Maximum of `f` over the grid: value, location, and whether the location
/// is on the grid boundary.
fn grid_sup(f: &(dyn Fn(&[f64]) -> f64 + Sync), dim: usize, grid: &GridSpec) -> (f64, Vec<f64>, bool) {
    let n = grid.points_per_axis();
    let stride = (n / COARSE_POINTS).max(1);
    let mut coarse_axis: Vec<usize> = (0..n).step_by(stride).collect();
    if *coarse_axis.last().unwrap() != n - 1 {
        coarse_axis.push(n - 1);
    }

    let coarse = evaluate_lattice(f, dim, grid, n, &vec![coarse_axis; dim]);
    let mut ranked = coarse;
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    ranked.truncate(REFINED_CANDIDATES);

    let mut best: Option<(f64, Vec<usize>)> = None;
    for (_, idx) in &ranked {
        let axes: Vec<Vec<usize>> = idx
            .iter()
            .map(|&i| (i.saturating_sub(2 * stride)..=(i + 2 * stride).min(n - 1)).collect())
            .collect();
        for cand in evaluate_lattice(f, dim, grid, n, &axes) {
            let better = match &best {
                None => true,
                Some((v, i)) => cand.0 > *v || (cand.0 == *v && cand.1 < *i),
            };
            if better {
                best = Some(cand);
            }
        }
    }
    let (value, idx) = best.expect("non-empty grid");
    let clipped = idx.iter().any(|&i| i == 0 || i == n - 1);
    let at = idx.iter().map(|&i| grid.coordinate(i, n)).collect();
    (value, at, clipped)
}

/// Evaluates `f` on the product of per-axis index lists.
fn evaluate_lattice(
    f: &(dyn Fn(&[f64]) -> f64 + Sync),
    dim: usize,
    grid: &GridSpec,
    n: usize,
    axes: &[Vec<usize>],
) -> Vec<(f64, Vec<usize>)> {
    let total: usize = axes.iter().map(Vec::len).product();
    (0..total)
        .into_par_iter()
        .map(|mut flat| {
            let mut idx = vec![0; dim];
            for (d, axis) in axes.iter().enumerate().rev() {
                idx[d] = axis[flat % axis.len()];
                flat /= axis.len();
            }
            let y: Vec<f64> = idx.iter().map(|&i| grid.coordinate(i, n)).collect();
            let v = f(&y);
            (if v.is_nan() { f64::NEG_INFINITY } else { v }, idx)
        })
        .collect()
}
