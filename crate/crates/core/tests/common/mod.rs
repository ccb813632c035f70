//! Independent oracles shared by the integration and acceptance tests.
//!
//! Everything here works on plain `f64` (with `NEG_INFINITY` as the max-plus
//! zero) and never calls into the algorithms under test, except to wrap the
//! generated matrices in library types.

#![allow(dead_code, clippy::needless_range_loop)]

use maxplus_core::{max_cycle_mean, normalize, KernelMatrix, MaxPlusFunction, MaxPlusValue};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const NI: f64 = f64::NEG_INFINITY;

pub type Plain = Vec<Vec<f64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

// ---------- finite max-plus oracles ----------

pub fn plain_mul(a: &Plain, b: &Plain) -> Plain {
    let n = a.len();
    let mut c = vec![vec![NI; n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == NI {
                continue;
            }
            for j in 0..n {
                let v = a[i][k] + b[k][j];
                if v > c[i][j] {
                    c[i][j] = v;
                }
            }
        }
    }
    c
}

pub fn plain_identity(n: usize) -> Plain {
    (0..n).map(|i| (0..n).map(|j| if i == j { 0.0 } else { NI }).collect()).collect()
}

/// `sup_{0 ≤ t ≤ T} A^t` by repeated multiplication.
pub fn brute_star(a: &Plain, horizon: usize) -> Plain {
    let n = a.len();
    let mut acc = plain_identity(n);
    let mut p = plain_identity(n);
    for _ in 0..horizon {
        p = plain_mul(&p, a);
        for i in 0..n {
            for j in 0..n {
                acc[i][j] = acc[i][j].max(p[i][j]);
            }
        }
    }
    acc
}

pub fn plain_apply(a: &Plain, h: &[f64]) -> Vec<f64> {
    a.iter()
        .map(|row| row.iter().zip(h).map(|(x, y)| x + y).fold(NI, f64::max))
        .collect()
}

pub fn to_plain(k: &KernelMatrix) -> Plain {
    k.matrix()
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|v| v.to_f64()).collect())
        .collect()
}

pub fn fn_plain(f: &MaxPlusFunction) -> Vec<f64> {
    f.iter().map(|v| v.to_f64()).collect()
}

pub fn fn_from(v: &[f64]) -> MaxPlusFunction {
    MaxPlusFunction::from_f64(v)
}

/// One corpus instance: a normalized integer kernel whose star is finite.
pub struct Instance {
    pub seed: u64,
    pub kernel: KernelMatrix,
    pub plain: Plain,
}

/// Random irreducible integer kernels with |X| ≤ 6, normalized to maximal
/// cycle mean 0. Weights are multiples of 60 so that every cycle mean (length
/// ≤ 6) is an integer and all arithmetic is exact.
pub fn corpus(count: usize, seed: u64) -> Vec<Instance> {
    let mut r = rng(seed);
    (0..count)
        .map(|k| {
            let n = r.gen_range(1..=6);
            let mut m: Plain = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| if r.gen_bool(0.45) { NI } else { 60.0 * r.gen_range(-9..=6) as f64 })
                        .collect()
                })
                .collect();
            // a Hamiltonian cycle keeps the kernel irreducible
            let perm = {
                let mut p: Vec<usize> = (0..n).collect();
                for i in (1..n).rev() {
                    p.swap(i, r.gen_range(0..=i));
                }
                p
            };
            for i in 0..n {
                let (x, y) = (perm[i], perm[(i + 1) % n]);
                if m[x][y] == NI {
                    m[x][y] = 60.0 * r.gen_range(-9..=6) as f64;
                }
            }
            let labels: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
            let raw = KernelMatrix::new(
                labels,
                maxplus_core::Matrix::from_f64_rows(&m.iter().map(Vec::as_slice).collect::<Vec<_>>())
                    .unwrap(),
                r.gen_range(0..n),
            )
            .unwrap();
            let lambda = max_cycle_mean(&raw).unwrap();
            let kernel = normalize(&raw, lambda).unwrap();
            let plain = to_plain(&kernel);
            Instance { seed: seed.wrapping_add(k as u64), kernel, plain }
        })
        .collect()
}

/// Maximal cycle mean by enumerating closed walks up to length n.
pub fn brute_cycle_mean(a: &Plain) -> f64 {
    let n = a.len();
    let mut best = NI;
    let mut p = plain_identity(n);
    for len in 1..=n {
        p = plain_mul(&p, a);
        for i in 0..n {
            best = best.max(p[i][i] / len as f64);
        }
    }
    best
}

/// Random finite integer vector.
pub fn random_int_vec(r: &mut ChaCha8Rng, n: usize, lo: i32, hi: i32) -> Vec<f64> {
    (0..n).map(|_| 60.0 * r.gen_range(lo..=hi) as f64).collect()
}

/// Random weights for max-plus combinations; some entries are −∞.
pub fn random_weights(r: &mut ChaCha8Rng, n: usize) -> Vec<MaxPlusValue> {
    let mut nu: Vec<MaxPlusValue> = (0..n)
        .map(|_| {
            if r.gen_bool(0.3) {
                MaxPlusValue::NegInf
            } else {
                MaxPlusValue::Finite(60.0 * r.gen_range(-5..=0) as f64)
            }
        })
        .collect();
    if nu.iter().all(|v| v.is_neg_inf()) {
        nu[r.gen_range(0..n)] = MaxPlusValue::Finite(0.0);
    }
    nu
}

// ---------- LQ oracles ----------

pub fn dot(x: &[f64], y: &[f64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| a * b).sum()
}

/// Action of the optimal path on horizon `T`, straight from
/// `-((|x|²+|y|²) cosh T - 2 x·y) / sinh T - λT`.
pub fn naive_action(x: &[f64], y: &[f64], t: f64, lambda: f64) -> f64 {
    let a = dot(x, x) + dot(y, y);
    -(a * t.cosh() - 2.0 * dot(x, y)) / t.sinh() - lambda * t
}

/// Maximum of `naive_action` over `T ∈ [t_lo, t_hi]`: a log grid followed by
/// golden-section refinement in the best bracket. Returns `(T, value)`.
pub fn sweep_max(x: &[f64], y: &[f64], lambda: f64, t_lo: f64, t_hi: f64, points: usize) -> (f64, f64) {
    let (llo, lhi) = (t_lo.ln(), t_hi.ln());
    let grid: Vec<f64> = (0..points)
        .map(|k| (llo + (lhi - llo) * k as f64 / (points - 1) as f64).exp())
        .collect();
    let f = |t: f64| naive_action(x, y, t, lambda);
    let (mut bi, mut bv) = (0, f64::NEG_INFINITY);
    for (i, &t) in grid.iter().enumerate() {
        let v = f(t);
        if v > bv {
            bi = i;
            bv = v;
        }
    }
    let (mut a, mut b) = (grid[bi.saturating_sub(1)], grid[(bi + 1).min(points - 1)]);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut c, mut d) = (b - g * (b - a), a + g * (b - a));
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a) <= 1e-15 * b {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    let t = 0.5 * (a + b);
    let v = f(t).max(bv);
    (t, v)
}

pub fn random_point(r: &mut ChaCha8Rng, dim: usize, half: f64) -> Vec<f64> {
    (0..dim).map(|_| r.gen_range(-half..=half)).collect()
}

/// `k` equally spaced unit vectors in the plane.
pub fn directions(k: usize) -> Vec<[f64; 2]> {
    (0..k)
        .map(|i| {
            let a = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
            [a.cos(), a.sin()]
        })
        .collect()
}

/// Probe points with `|x| ≤ radius`: the origin plus rings.
pub fn disc_probes(radius: f64) -> Vec<Vec<f64>> {
    let mut out = vec![vec![0.0, 0.0]];
    for ring in 1..=4 {
        let rr = radius * ring as f64 / 4.0;
        for k in 0..8 {
            let a = 2.0 * std::f64::consts::PI * (k as f64 + 0.5 * ring as f64) / 8.0;
            out.push(vec![rr * a.cos(), rr * a.sin()]);
        }
    }
    out
}

pub mod finite;
pub mod lq;
