//! LQ checks against the naive path-action oracle.

use maxplus_core::lq::kernel::optimal_cosh;
use maxplus_core::lq::{horofunction, star_kernel};
use rand::Rng;

use super::*;

pub const LAMBDAS: [f64; 3] = [0.0, 0.5, 1.0];

/// Worst `|star_kernel - sweep|` over `cases` random pairs. For λ = 0 and
/// `x·y ≤ 0` the reference is the `T → ∞` limit `-|x|² - |y|²`, and the sweep
/// must stay below it.
pub fn star_vs_sweep(cases: usize, seed: u64) -> std::result::Result<f64, String> {
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    for k in 0..cases {
        let dim = 1 + k % 3;
        let lambda = LAMBDAS[(k / 3) % 3];
        let x = random_point(&mut r, dim, 5.0);
        let y = random_point(&mut r, dim, 5.0);
        let closed = star_kernel(&x, &y, lambda).map_err(|e| e.to_string())?;
        let (_, swept) = sweep_max(&x, &y, lambda, 1e-7, 40.0, 600);
        let err = if lambda == 0.0 && dot(&x, &y) <= 0.0 {
            let limit = -dot(&x, &x) - dot(&y, &y);
            if swept > limit + 1e-9 {
                return Err(format!("sweep {swept} exceeds the T→∞ limit {limit} at x={x:?}, y={y:?}"));
            }
            (closed - limit).abs()
        } else {
            (closed - swept).abs()
        };
        if err > worst {
            worst = err;
        }
    }
    Ok(worst)
}

/// Worst relative error of `cosh T*` against the numeric argmax, over cases
/// with a finite optimal horizon.
pub fn horizon_vs_sweep(cases: usize, seed: u64) -> std::result::Result<f64, String> {
    let mut r = rng(seed);
    let mut worst: f64 = 0.0;
    let mut done = 0;
    let mut k = 0;
    while done < cases {
        k += 1;
        let dim = 1 + k % 3;
        let lambda = if k % 2 == 0 { 0.0 } else { r.gen_range(0.1..2.0) };
        let x = random_point(&mut r, dim, 5.0);
        let y = random_point(&mut r, dim, 5.0);
        if lambda == 0.0 && dot(&x, &y) <= 0.0 {
            continue;
        }
        let c = optimal_cosh(&x, &y, lambda).map_err(|e| e.to_string())?;
        let (t, _) = sweep_max(&x, &y, lambda, 1e-7, 60.0, 600);
        let err = (t.cosh() / c - 1.0).abs();
        if err > worst {
            worst = err;
        }
        done += 1;
    }
    Ok(worst)
}

/// Horofunction errors `|A*(x, rn) - A*(0, rn) - h_n(x)|` at each radius,
/// maximized over 12 directions and probes with `|x| ≤ 2`.
pub fn horofunction_errors(lambda: f64, radii: &[f64]) -> Vec<f64> {
    radii
        .iter()
        .map(|&rad| {
            let mut worst: f64 = 0.0;
            for n in directions(12) {
                let far = [rad * n[0], rad * n[1]];
                let base = star_kernel(&[0.0, 0.0], &far, lambda).unwrap();
                for x in disc_probes(2.0) {
                    let v = star_kernel(&x, &far, lambda).unwrap() - base;
                    let h = horofunction(&x, &n, lambda).unwrap();
                    worst = worst.max((v - h).abs());
                }
            }
            worst
        })
        .collect()
}
