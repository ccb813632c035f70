//! Linear-quadratic Lax-Oleinik semigroup on `R^n`: dynamics `ẋ = u`,
//! Lagrangian `L(x,u) = -|x|² - |u|²`, normalized by an eigenvalue `λ ≥ 0`.
//!
//! Optimal trajectories solve `ẍ = x`, which gives closed forms for the
//! finite-horizon kernel, its supremum over horizons and the horofunctions.

pub mod contour;
pub mod euler;
pub mod flow;
pub mod horofunction;
pub mod kernel;
pub mod verify;

pub use contour::{horosphere_contour, Polyline};
pub use euler::{euler_path, EulerPath};
pub use flow::{feedback_trajectory, Trajectory};
pub use horofunction::horofunction;
pub use kernel::{finite_horizon_kernel, optimal_horizon, star_kernel, star_kernel_origin};
pub use verify::{verify_harmonic_lq, GridSpec, HarmonicReport, ProbeResult};

use crate::error::{Error, Result};

/// Dimension and eigenvalue of an LQ instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LqParams {
    pub dim: usize,
    pub lambda: f64,
}

impl LqParams {
    pub fn new(dim: usize, lambda: f64) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidArgument("dimension must be positive".into()));
        }
        check_lambda(lambda)?;
        Ok(LqParams { dim, lambda })
    }
}

/// Tolerance on `|n| = 1` for direction vectors.
pub const UNIT_TOL: f64 = 1e-12;

pub(crate) fn check_lambda(lambda: f64) -> Result<()> {
    if !(lambda >= 0.0) || !lambda.is_finite() {
        return Err(Error::NegativeLambda(lambda));
    }
    Ok(())
}

pub(crate) fn check_same_dim(x: &[f64], y: &[f64]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch { expected: x.len(), found: y.len() });
    }
    if x.is_empty() {
        return Err(Error::InvalidArgument("points must have at least one coordinate".into()));
    }
    Ok(())
}

pub(crate) fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

pub(crate) fn norm2(x: &[f64]) -> f64 {
    dot(x, x)
}

pub(crate) fn dist2(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// Checks `|n| = 1` within [`UNIT_TOL`].
pub fn check_unit(n: &[f64]) -> Result<()> {
    let norm = norm2(n).sqrt();
    if (norm - 1.0).abs() > UNIT_TOL {
        return Err(Error::NonUnitDirection(norm));
    }
    Ok(())
}
