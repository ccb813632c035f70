//! Horofunctions `h_n = lim_{r→∞} A*<·, rn> - A*<0, rn>` of the LQ model.

use super::{check_lambda, check_unit, dot, norm2};
use crate::error::Result;

/// Boundary point in direction `n` (a unit vector), normalized at the origin.
///
/// λ = 0: `-|x|² + 2(x·n)²` when `x·n > 0`, `-|x|²` otherwise.
/// λ > 0: `-λ|x|²/R² + x·n (λ + 2|x|²)/R - λ log(R/sqrt λ)` with
/// `R = sqrt((x·n)² + λ) - x·n`.
pub fn horofunction(x: &[f64], n: &[f64], lambda: f64) -> Result<f64> {
    check_lambda(lambda)?;
    check_unit(n)?;
    super::check_same_dim(x, n)?;
    Ok(horofunction_unchecked(x, n, lambda))
}

pub(crate) fn horofunction_unchecked(x: &[f64], n: &[f64], lambda: f64) -> f64 {
    let p = dot(x, n);
    let r2 = norm2(x);
    if lambda == 0.0 {
        return if p > 0.0 { -r2 + 2.0 * p * p } else { -r2 };
    }
    let root = (p * p + lambda).sqrt();
    let big_r = if p > 0.0 { lambda / (root + p) } else { root - p };
    -lambda * r2 / (big_r * big_r) + p * (lambda + 2.0 * r2) / big_r
        - lambda * (big_r / lambda.sqrt()).ln()
}
