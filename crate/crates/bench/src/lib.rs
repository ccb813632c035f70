//! Inputs shared by the benchmarks.

use maxplus_core::{max_cycle_mean, normalize, KernelMatrix, Matrix};

/// Deterministic dense kernel of size `n` with entries in `[-9, 0]`,
/// normalized to maximal cycle mean 0.
pub fn dense_kernel(n: usize, seed: u64) -> KernelMatrix {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 33) % 10) as f64
    };
    let rows: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| -next()).collect()).collect();
    let refs: Vec<&[f64]> = rows.iter().map(Vec::as_slice).collect();
    let k = KernelMatrix::unlabeled(Matrix::from_f64_rows(&refs).unwrap()).unwrap();
    let lambda = max_cycle_mean(&k).unwrap();
    normalize(&k, lambda).unwrap()
}
