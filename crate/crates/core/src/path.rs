//! Discrete-time paths: rewards, almost-geodesics, almost-optimal paths,
//! the downhill construction and limits in the Martin space.
//!
//! Time is integral and `A^t` is the `t`-th max-plus power of the one-step
//! kernel. Since `A^{s+t} ≥ A^s A^t` entrywise, dropping interior sample times
//! can only increase a reward, so the infimum over sub-partitions with fixed
//! endpoints is attained by the finest sampled partition. All checkers below
//! therefore test that partition only.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::martin::{martin_kernel, recurrence_classes, MartinObject};
use crate::matrix::{KernelMatrix, Matrix, MaxPlusFunction};
use crate::star::StarMatrix;
use crate::value::{otimes, Finite, MaxPlusValue, NegInf};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscretePath {
    times: Vec<u64>,
    states: Vec<usize>,
}

impl DiscretePath {
    pub fn new(times: Vec<u64>, states: Vec<usize>) -> Result<Self> {
        if times.len() != states.len() {
            return Err(Error::InvalidArgument(format!(
                "path has {} times but {} states",
                times.len(),
                states.len()
            )));
        }
        if times.is_empty() {
            return Err(Error::InvalidArgument("path must have at least one sample".into()));
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument("path times must be strictly increasing".into()));
        }
        Ok(DiscretePath { times, states })
    }

    /// Samples at times `0, 1, …, len-1`.
    pub fn unit_steps(states: Vec<usize>) -> Result<Self> {
        let times = (0..states.len() as u64).collect();
        DiscretePath::new(times, states)
    }

    pub fn constant(state: usize, len: usize) -> Result<Self> {
        DiscretePath::unit_steps(vec![state; len])
    }

    pub fn times(&self) -> &[u64] {
        &self.times
    }

    pub fn states(&self) -> &[usize] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// `γγ'`: requires `γ` to end where and when `γ'` starts.
    pub fn concat(&self, other: &DiscretePath) -> Result<DiscretePath> {
        let (t, x) = (*self.times.last().unwrap(), *self.states.last().unwrap());
        if other.times[0] != t || other.states[0] != x {
            return Err(Error::InvalidArgument(
                "paths do not meet: end of the first must equal start of the second".into(),
            ));
        }
        let mut times = self.times.clone();
        let mut states = self.states.clone();
        times.extend(&other.times[1..]);
        states.extend(&other.states[1..]);
        DiscretePath::new(times, states)
    }

    fn check_states(&self, n: usize) -> Result<()> {
        match self.states.iter().find(|&&s| s >= n) {
            Some(&s) => Err(Error::InvalidArgument(format!("path state {s} out of range"))),
            None => Ok(()),
        }
    }
}

/// Per-step rewards `A^{t_{k+1}-t_k}<γ_k, γ_{k+1}>` and their prefix sums.
struct StepRewards {
    prefix: Vec<f64>,
    // number of -∞ steps among the first k
    neg_inf_prefix: Vec<usize>,
}

impl StepRewards {
    fn new(a: &KernelMatrix, path: &DiscretePath) -> Result<Self> {
        path.check_states(a.dim())?;
        let mut powers: HashMap<u64, Matrix> = HashMap::new();
        let mut prefix = vec![0.0];
        let mut neg_inf_prefix = vec![0];
        for k in 0..path.len() - 1 {
            let gap = path.times[k + 1] - path.times[k];
            let p = powers.entry(gap).or_insert_with(|| a.power(gap));
            let r = p[(path.states[k], path.states[k + 1])];
            let (last, last_inf) = (prefix[k], neg_inf_prefix[k]);
            match r {
                Finite(v) => {
                    prefix.push(last + v);
                    neg_inf_prefix.push(last_inf);
                }
                _ => {
                    prefix.push(last);
                    neg_inf_prefix.push(last_inf + 1);
                }
            }
        }
        Ok(StepRewards { prefix, neg_inf_prefix })
    }

    fn reward(&self, i: usize, j: usize) -> MaxPlusValue {
        if self.neg_inf_prefix[j] > self.neg_inf_prefix[i] {
            NegInf
        } else {
            Finite(self.prefix[j] - self.prefix[i])
        }
    }
}

fn check_indices(path: &DiscretePath, i: usize, j: usize) -> Result<()> {
    if i > j || j >= path.len() {
        return Err(Error::InvalidArgument(format!(
            "invalid sample indices ({i}, {j}) for a path of length {}",
            path.len()
        )));
    }
    Ok(())
}

/// `I(t_i, …, t_j; γ)`, which is also the reward `I(γ|[t_i, t_j])`.
pub fn path_reward(a: &KernelMatrix, path: &DiscretePath, i: usize, j: usize) -> Result<MaxPlusValue> {
    check_indices(path, i, j)?;
    Ok(StepRewards::new(a, path)?.reward(i, j))
}

/// For every sampled pair `i < j`, `I(t_i..t_j) ≥ A*<γ_i, γ_j> - ε`.
pub fn is_almost_geodesic(path: &DiscretePath, epsilon: f64, s: &StarMatrix) -> Result<bool> {
    check_epsilon(epsilon)?;
    let r = StepRewards::new(s.kernel(), path)?;
    let st = path.states();
    for i in 0..path.len() {
        for j in i + 1..path.len() {
            let target = otimes(s.get(st[i], st[j]), Finite(-epsilon));
            if !target.approx_le(r.reward(i, j)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// For every sampled end index `j`, `h(γ_0) ≤ ε + I(t_0..t_j) + h(γ_j)`.
pub fn is_almost_optimal(
    path: &DiscretePath,
    h: &MaxPlusFunction,
    epsilon: f64,
    a: &KernelMatrix,
) -> Result<bool> {
    check_epsilon(epsilon)?;
    if path.times[0] != 0 {
        return Err(Error::InvalidArgument("almost-optimal paths start at time 0".into()));
    }
    if h.len() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: h.len() });
    }
    let r = StepRewards::new(a, path)?;
    let st = path.states();
    let start = h[st[0]];
    Ok((0..path.len()).all(|j| {
        let rhs = otimes(Finite(epsilon), otimes(r.reward(0, j), h[st[j]]));
        start.approx_le(rhs)
    }))
}

/// `J_α(s,t) = A*<α_0, α_s> + I(α|[s,t]) - A*<α_0, α_t>`, with `s`, `t`
/// sample indices. Always ≤ 0, and additive over consecutive intervals.
pub fn j_functional(path: &DiscretePath, s_idx: usize, t_idx: usize, s: &StarMatrix) -> Result<MaxPlusValue> {
    check_indices(path, s_idx, t_idx)?;
    s.require_finite()?;
    let r = StepRewards::new(s.kernel(), path)?;
    let st = path.states();
    let x0 = st[0];
    Ok(otimes(
        Finite(s.fin(x0, st[s_idx]) - s.fin(x0, st[t_idx])),
        r.reward(s_idx, t_idx),
    ))
}

/// Per-step slack budget `ε_n = ε / 2^{n+2}`; its total is below `ε/2`.
pub fn downhill_slack(epsilon: f64, n: usize) -> f64 {
    epsilon / 2f64.powi(n as i32 + 2)
}

/// Greedy downhill path for a harmonic `h`: from `x_n`, step to a state `y`
/// maximizing `A<x_n, y> + h(y)` (lowest index on ties). On a finite space
/// the maximum equals `h(x_n)`, so every step meets its slack `ε_n` with
/// room to spare. The returned path has `steps + 1` samples at times
/// `0..=steps`.
pub fn downhill_path(
    a: &KernelMatrix,
    h: &MaxPlusFunction,
    x0: usize,
    epsilon: f64,
    steps: usize,
) -> Result<DiscretePath> {
    if !(epsilon > 0.0) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {epsilon}")));
    }
    if x0 >= a.dim() {
        return Err(Error::InvalidArgument(format!("start state {x0} out of range")));
    }
    if h.len() != a.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: h.len() });
    }
    if !crate::martin::is_harmonic(a, h) {
        return Err(Error::NotHarmonic);
    }
    if h[x0].is_neg_inf() {
        return Err(Error::HMinusInfinityAtStart { state: x0 });
    }
    let mut states = vec![x0];
    let mut x = x0;
    for n in 0..steps {
        let (next, value) = (0..a.dim())
            .map(|y| (y, otimes(a.get(x, y), h[y])))
            .fold((0, NegInf), |best, cand| if cand.1 > best.1 { cand } else { best });
        let slack = downhill_slack(epsilon, n);
        debug_assert!(h[x].approx_le(otimes(Finite(slack), value)));
        states.push(next);
        x = next;
    }
    DiscretePath::unit_steps(states)
}

/// Limit of the Martin columns `K<·, γ(t)>` along an almost-geodesic.
///
/// On a finite sample "eventually constant" means the recurrence class is
/// constant over the second half of the samples. The limit is required to lie
/// in the minimal Martin space.
pub fn geodesic_limit(path: &DiscretePath, epsilon: f64, s: &StarMatrix) -> Result<MartinObject> {
    s.require_finite()?;
    if !is_almost_geodesic(path, epsilon, s)? {
        return Err(Error::NotAlmostGeodesic { epsilon });
    }
    let classes = recurrence_classes(s);
    let ids: Vec<usize> = path.states().iter().map(|&x| classes.class_of(x)).collect();
    let tail = &ids[ids.len() / 2..];
    let last = *tail.last().unwrap();
    if tail.iter().any(|&c| c != last) {
        return Err(Error::NotEventuallyConstant);
    }
    let obj = martin_kernel(s)?.swap_remove(last);
    if !obj.minimal {
        return Err(Error::LimitNotMinimal { class_id: last });
    }
    Ok(obj)
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon >= 0.0) || !epsilon.is_finite() {
        return Err(Error::InvalidArgument(format!("epsilon must be finite and >= 0, got {epsilon}")));
    }
    Ok(())
}
