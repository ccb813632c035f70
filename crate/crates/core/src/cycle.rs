//! Maximum cycle mean (Karp) and eigenvalue normalization.

use crate::error::{Error, Result};
use crate::matrix::{KernelMatrix, Matrix};
use crate::value::{oplus, otimes, Finite, MaxPlusValue, NegInf, PosInf};

/// Maximum over directed cycles of weight / length.
///
/// Karp's recursion with every state as a source:
/// `D_k(v)` is the best weight of a walk of length `k` ending at `v`, and
/// `λ = max_v min_k (D_n(v) - D_k(v)) / (n - k)`.
pub fn max_cycle_mean(a: &KernelMatrix) -> Result<f64> {
    max_cycle_mean_matrix(a.matrix())
}

pub fn max_cycle_mean_matrix(m: &Matrix) -> Result<f64> {
    let n = m.dim();
    if m.iter().any(|v| matches!(v, PosInf)) {
        return Err(Error::InvalidArgument("kernel entries must not be +inf".into()));
    }
    let mut d = vec![vec![NegInf; n]; n + 1];
    d[0] = vec![MaxPlusValue::ZERO; n];
    for k in 1..=n {
        for v in 0..n {
            let mut best = NegInf;
            for u in 0..n {
                best = oplus(best, otimes(d[k - 1][u], m[(u, v)]));
            }
            d[k][v] = best;
        }
    }

    let mut lambda: Option<f64> = None;
    for v in 0..n {
        let Finite(dn) = d[n][v] else { continue };
        let mut worst: Option<f64> = None;
        for (k, row) in d.iter().enumerate().take(n) {
            if let Finite(dk) = row[v] {
                let r = (dn - dk) / (n - k) as f64;
                worst = Some(worst.map_or(r, |w| w.min(r)));
            }
        }
        if let Some(w) = worst {
            lambda = Some(lambda.map_or(w, |l| l.max(w)));
        }
    }
    lambda.ok_or(Error::NoCycle)
}

/// `A<x,y> - λ` entrywise: the kernel of the normalized semigroup.
pub fn normalize(a: &KernelMatrix, lambda: f64) -> Result<KernelMatrix> {
    if !lambda.is_finite() {
        return Err(Error::InvalidArgument(format!("lambda must be finite, got {lambda}")));
    }
    a.with_matrix(a.matrix().map(|v| otimes(v, Finite(-lambda))))
}
