//! Optimal trajectories `x(t) = W e^t + Z e^{-t}` joining two points.

use serde::Serialize;

use super::{check_lambda, check_same_dim, norm2};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerPath {
    pub w: Vec<f64>,
    pub z: Vec<f64>,
    pub horizon: f64,
}

/// The solution of `ẍ = x` with `x(0) = x` and `x(T) = y`.
pub fn euler_path(x: &[f64], y: &[f64], horizon: f64) -> Result<EulerPath> {
    check_same_dim(x, y)?;
    if !(horizon > 0.0) || !horizon.is_finite() {
        return Err(Error::NonpositiveHorizon(horizon));
    }
    let (ep, em) = (horizon.exp(), (-horizon).exp());
    let denom = ep - em;
    let w = x.iter().zip(y).map(|(a, b)| (b - em * a) / denom).collect();
    let z = x.iter().zip(y).map(|(a, b)| (ep * a - b) / denom).collect();
    Ok(EulerPath { w, z, horizon })
}

impl EulerPath {
    pub fn position(&self, t: f64) -> Vec<f64> {
        let (ep, em) = (t.exp(), (-t).exp());
        self.w.iter().zip(&self.z).map(|(w, z)| w * ep + z * em).collect()
    }

    pub fn velocity(&self, t: f64) -> Vec<f64> {
        let (ep, em) = (t.exp(), (-t).exp());
        self.w.iter().zip(&self.z).map(|(w, z)| w * ep - z * em).collect()
    }

    /// Instantaneous normalized reward `-(|x|² + |ẋ|² + λ)`.
    pub fn reward_rate(&self, t: f64, lambda: f64) -> f64 {
        -(norm2(&self.position(t)) + norm2(&self.velocity(t)) + lambda)
    }

    /// `samples + 1` equally spaced points on `[0, T]`.
    pub fn sample(&self, samples: usize) -> Vec<(f64, Vec<f64>)> {
        let samples = samples.max(1);
        (0..=samples)
            .map(|k| {
                let t = self.horizon * k as f64 / samples as f64;
                (t, self.position(t))
            })
            .collect()
    }

    /// `-∫_0^T (|x|² + |ẋ|² + λ) dt` by adaptive Simpson quadrature.
    pub fn integrated_reward(&self, lambda: f64, tol: f64) -> Result<f64> {
        check_lambda(lambda)?;
        let f = |t: f64| self.reward_rate(t, lambda);
        Ok(adaptive_simpson(&f, 0.0, self.horizon, tol, 48))
    }
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    let (fa, fb) = (f(a), f(b));
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson_step(f, a, b, fa, fm, fb, whole, tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson_step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + simpson_step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lq::finite_horizon_kernel;

    #[test]
    fn zero_endpoints() {
        let p = euler_path(&[0.0, 0.0], &[0.0, 0.0], 1.3).unwrap();
        assert_eq!(p.w, vec![0.0, 0.0]);
        assert_eq!(p.z, vec![0.0, 0.0]);
        assert!(p.sample(4).iter().all(|(_, x)| x == &vec![0.0, 0.0]));
    }

    #[test]
    fn pure_exponential_ray() {
        let e = 1f64.exp();
        let p = euler_path(&[1.0, 0.0], &[e, 0.0], 1.0).unwrap();
        assert!((p.w[0] - 1.0).abs() < 1e-15 && p.w[1] == 0.0);
        assert!(p.z[0].abs() < 1e-15 && p.z[1] == 0.0);
    }

    #[test]
    fn endpoints_reproduced() {
        let (x, y) = ([0.3, -1.2, 2.0], [-1.0, 0.5, 4.0]);
        for &t in &[0.1, 1.0, 7.5] {
            let p = euler_path(&x, &y, t).unwrap();
            let (a, b) = (p.position(0.0), p.position(t));
            for i in 0..3 {
                assert!((a[i] - x[i]).abs() < 1e-10);
                assert!((b[i] - y[i]).abs() < 1e-10 * (1.0 + y[i].abs()));
            }
        }
    }

    #[test]
    fn worked_action_by_quadrature() {
        let p = euler_path(&[1.0, 0.0], &[2.0, 0.0], 2f64.ln()).unwrap();
        let v = p.integrated_reward(0.0, 1e-12).unwrap();
        assert!((v + 3.0).abs() < 1e-8, "{v}");
        let k = finite_horizon_kernel(&[1.0, 0.0], &[2.0, 0.0], 2f64.ln(), 0.0).unwrap();
        assert!((v - k).abs() < 1e-8);
    }

    #[test]
    fn rejects_bad_horizon() {
        assert!(matches!(euler_path(&[0.0], &[1.0], 0.0), Err(Error::NonpositiveHorizon(_))));
    }
}
