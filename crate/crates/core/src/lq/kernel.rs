//! Finite-horizon kernel `A^T_λ<x,y>` and its supremum over horizons.
//!
//! The optimal action over horizon `T` is
//! `-((|x|²+|y|²) cosh T - 2x·y) / sinh T - λT`. Writing
//! `(|x|²+|y|²) cosh T - 2x·y = |x-y|² cosh T + 2x·y (cosh T - 1)` gives the
//! cancellation-free form `-|x-y|² coth T - 2x·y tanh(T/2) - λT`, used
//! throughout. Horizons are carried as `δ = cosh T - 1` so that short
//! horizons keep full relative precision.

use super::{check_lambda, check_same_dim, dist2, dot, norm2};
use crate::error::{Error, Result};

/// Below this horizon `coth` and `tanh` are replaced by their series.
const SMALL_T: f64 = 1e-6;

/// Optimal reward of going from `x` to `y` in time `T`, normalized by `λ`.
pub fn finite_horizon_kernel(x: &[f64], y: &[f64], horizon: f64, lambda: f64) -> Result<f64> {
    check_same_dim(x, y)?;
    check_lambda(lambda)?;
    if !(horizon > 0.0) {
        return Err(Error::NonpositiveHorizon(horizon));
    }
    let d2 = dist2(x, y);
    let p = dot(x, y);
    let (coth, tanh_half) = if horizon < SMALL_T {
        (1.0 / horizon + horizon / 3.0, horizon / 2.0)
    } else {
        (1.0 / horizon.tanh(), (horizon / 2.0).tanh())
    };
    let drift = if lambda == 0.0 { 0.0 } else { lambda * horizon };
    let transport = if d2 == 0.0 { 0.0 } else { d2 * coth };
    Ok(-transport - 2.0 * p * tanh_half - drift)
}

/// `cosh T* - 1` for the maximizing horizon, or `None` when the supremum is
/// only approached as `T → ∞` (λ = 0 and `x·y ≤ 0`).
fn optimal_delta(x: &[f64], y: &[f64], lambda: f64) -> Option<f64> {
    let d2 = dist2(x, y);
    let p = dot(x, y);
    if lambda == 0.0 {
        // cosh T = (|x|²+|y|²) / (2x·y)
        return (p > 0.0).then(|| d2 / (2.0 * p));
    }
    // λ cosh T = -x·y + sqrt((x·y)² + λ² + λ(|x|²+|y|²)), positive root
    let s = (p * p + lambda * lambda + lambda * (norm2(x) + norm2(y))).sqrt();
    let q = p + lambda;
    Some(if q > 0.0 { d2 / (s + q) } else { (s - q) / lambda })
}

fn acosh_1p(delta: f64) -> f64 {
    (delta + (delta * (2.0 + delta)).sqrt()).ln_1p()
}

/// Maximizer over `T > 0` of [`finite_horizon_kernel`]; `f64::INFINITY` when
/// the supremum sits at `T = +∞`. For `x = y` the maximizer degenerates to 0.
pub fn optimal_horizon(x: &[f64], y: &[f64], lambda: f64) -> Result<f64> {
    check_same_dim(x, y)?;
    check_lambda(lambda)?;
    if lambda == 0.0 && norm2(x) == 0.0 && norm2(y) == 0.0 {
        return Err(Error::BothEndpointsZeroWithLambdaZero);
    }
    Ok(optimal_delta(x, y, lambda).map_or(f64::INFINITY, acosh_1p))
}

/// `cosh T*`, with `f64::INFINITY` for the infinite-horizon case.
pub fn optimal_cosh(x: &[f64], y: &[f64], lambda: f64) -> Result<f64> {
    check_same_dim(x, y)?;
    check_lambda(lambda)?;
    if lambda == 0.0 && norm2(x) == 0.0 && norm2(y) == 0.0 {
        return Err(Error::BothEndpointsZeroWithLambdaZero);
    }
    Ok(optimal_delta(x, y, lambda).map_or(f64::INFINITY, |d| 1.0 + d))
}

/// Kleene star `A*<x,y> = sup_T A^T_λ<x,y>`.
///
/// λ = 0 uses the closed forms `-|x-y||x+y|` (when `x·y > 0`) and
/// `-|x|² - |y|²`; λ > 0 substitutes the optimal `cosh T` into the action.
pub fn star_kernel(x: &[f64], y: &[f64], lambda: f64) -> Result<f64> {
    check_same_dim(x, y)?;
    check_lambda(lambda)?;
    if x == y {
        return Ok(0.0);
    }
    let d2 = dist2(x, y);
    let p = dot(x, y);
    if lambda == 0.0 {
        if p > 0.0 {
            let sum2: f64 = x.iter().zip(y).map(|(a, b)| (a + b) * (a + b)).sum();
            return Ok(-(d2.sqrt() * sum2.sqrt()));
        }
        return Ok(-norm2(x) - norm2(y));
    }
    let delta = optimal_delta(x, y, lambda).expect("finite horizon for lambda > 0");
    let sinh = (delta * (2.0 + delta)).sqrt();
    let coth = (1.0 + delta) / sinh;
    let tanh_half = sinh / (2.0 + delta);
    let horizon = (delta + sinh).ln_1p();
    Ok(-d2 * coth - 2.0 * p * tanh_half - lambda * horizon)
}

/// `A*<0,y> = -|y| sqrt(λ+|y|²) - λ log((sqrt(λ+|y|²) + |y|) / sqrt λ)`.
///
/// The additive constant `λ log sqrt λ` is the one for which `A*<0,0> = 0`.
pub fn star_kernel_origin(y: &[f64], lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::NonpositiveLambda(lambda));
    }
    let r = norm2(y).sqrt();
    Ok(-r * (lambda + r * r).sqrt() - lambda * (r / lambda.sqrt()).asinh())
}
