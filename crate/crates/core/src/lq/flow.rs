//! Closed-loop trajectories under the feedback `ẋ = gain · ∇h(x)`.
//!
//! With `gain = 1` this is the feedback `u = ∇φ`. The maximizer of
//! `-|u|² + ∇h·u` is `u = ∇h / 2`, so [`OPTIMAL_GAIN`] is the gain whose
//! trajectories realize `h` as a value function.

use serde::Serialize;

use super::kernel::finite_horizon_kernel;
use crate::error::{Error, Result};

pub const OPTIMAL_GAIN: f64 = 0.5;

/// Finite-difference spacing for gradients.
const GRAD_STEP: f64 = 1e-6;
/// Allowed disagreement of forward and backward differences, relative to
/// `1 + |∂h|`.
const KINK_TOL: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<Vec<f64>>,
}

/// Central-difference gradient; errors where one-sided differences disagree,
/// which signals a kink of `h`.
pub fn gradient(h: &dyn Fn(&[f64]) -> f64, x: &[f64]) -> Result<Vec<f64>> {
    let hx = h(x);
    let mut y = x.to_vec();
    let mut grad = Vec::with_capacity(x.len());
    for i in 0..x.len() {
        y[i] = x[i] + GRAD_STEP;
        let up = h(&y);
        y[i] = x[i] - GRAD_STEP;
        let down = h(&y);
        y[i] = x[i];
        let (fwd, bwd) = ((up - hx) / GRAD_STEP, (hx - down) / GRAD_STEP);
        let central = (up - down) / (2.0 * GRAD_STEP);
        let gap = (fwd - bwd).abs();
        if !central.is_finite() || gap > KINK_TOL * (1.0 + central.abs()) {
            return Err(Error::GradientSingularity { at: x.to_vec(), gap });
        }
        grad.push(central);
    }
    Ok(grad)
}

/// Integrates `ẋ = ∇h(x)` from `x0` with classical RK4.
pub fn feedback_trajectory(
    h: &dyn Fn(&[f64]) -> f64,
    x0: &[f64],
    duration: f64,
    step: f64,
) -> Result<Trajectory> {
    feedback_trajectory_with_gain(h, x0, duration, step, 1.0)
}

/// Integrates `ẋ = gain · ∇h(x)`. The step is shrunk so that it divides the
/// duration evenly.
pub fn feedback_trajectory_with_gain(
    h: &dyn Fn(&[f64]) -> f64,
    x0: &[f64],
    duration: f64,
    step: f64,
    gain: f64,
) -> Result<Trajectory> {
    if !(duration > 0.0) || !(step > 0.0) || !duration.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "duration and step must be positive, got {duration} and {step}"
        )));
    }
    if x0.is_empty() {
        return Err(Error::InvalidArgument("initial state must be non-empty".into()));
    }
    let steps = (duration / step).ceil().max(1.0) as usize;
    let dt = duration / steps as f64;
    let field = |x: &[f64]| -> Result<Vec<f64>> {
        Ok(gradient(h, x)?.into_iter().map(|g| gain * g).collect())
    };
    let axpy = |x: &[f64], k: &[f64], a: f64| -> Vec<f64> {
        x.iter().zip(k).map(|(xi, ki)| xi + a * ki).collect()
    };

    let mut times = vec![0.0];
    let mut states = vec![x0.to_vec()];
    let mut x = x0.to_vec();
    for s in 0..steps {
        let k1 = field(&x)?;
        let k2 = field(&axpy(&x, &k1, dt / 2.0))?;
        let k3 = field(&axpy(&x, &k2, dt / 2.0))?;
        let k4 = field(&axpy(&x, &k3, dt))?;
        for i in 0..x.len() {
            x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        times.push(dt * (s + 1) as f64);
        states.push(x.clone());
    }
    Ok(Trajectory { times, states })
}

/// Smallest `ε ≥ 0` for which the sampled trajectory is ε-almost-optimal
/// with respect to `h`, rewarding each sample interval by the optimal
/// finite-horizon kernel.
pub fn almost_optimality_gap(h: &dyn Fn(&[f64]) -> f64, traj: &Trajectory, lambda: f64) -> Result<f64> {
    let start = h(&traj.states[0]);
    let mut reward = 0.0;
    let mut gap: f64 = 0.0;
    for k in 0..traj.states.len() - 1 {
        let dt = traj.times[k + 1] - traj.times[k];
        reward += finite_horizon_kernel(&traj.states[k], &traj.states[k + 1], dt, lambda)?;
        gap = gap.max(start - reward - h(&traj.states[k + 1]));
    }
    Ok(gap)
}
