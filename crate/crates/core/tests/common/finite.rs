//! Per-instance checks for the finite module. Each returns `Err(reason)` on
//! the first violation.

use maxplus_core::martin::{extremal_witness, martin_column, split_non_extremal};
use maxplus_core::path::downhill_slack;
use maxplus_core::{
    downhill_path, geodesic_limit, is_almost_geodesic, is_almost_optimal, is_extremal,
    is_harmonic, is_superharmonic, j_functional, kleene_star, martin_kernel, minimal_martin_space,
    mu, recurrence_classes, represent, spectral_measure, DiscretePath, MaxPlusFunction,
    MaxPlusValue, StarMatrix,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::*;

pub type Check = std::result::Result<(), String>;

fn fail<T>(inst: &Instance, msg: impl std::fmt::Display) -> std::result::Result<T, String> {
    Err(format!("instance {} (n={}): {msg}", inst.seed, inst.plain.len()))
}

pub fn star_of(inst: &Instance) -> StarMatrix {
    kleene_star(&inst.kernel).expect("normalized kernel has no positive cycle")
}

fn star_plain(s: &StarMatrix) -> Plain {
    s.entries()
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|v| v.to_f64()).collect())
        .collect()
}

/// Star equals the brute-force sup of powers; triangle inequality; zero
/// diagonal; idempotence; cycle mean normalized to zero.
pub fn check_star(inst: &Instance) -> Check {
    let n = inst.plain.len();
    if brute_cycle_mean(&inst.plain) != 0.0 {
        return fail(inst, "normalized cycle mean is not 0");
    }
    let s = star_of(inst);
    let st = star_plain(&s);
    if st != brute_star(&inst.plain, 2 * n) {
        return fail(inst, "star differs from brute-force sup of powers");
    }
    if plain_mul(&st, &st) != st {
        return fail(inst, "star is not idempotent");
    }
    for x in 0..n {
        if st[x][x] != 0.0 {
            return fail(inst, format!("diagonal entry {x} is {}", st[x][x]));
        }
        for y in 0..n {
            for z in 0..n {
                if st[x][z] + st[z][y] > st[x][y] {
                    return fail(inst, format!("triangle inequality fails at ({x},{z},{y})"));
                }
            }
        }
    }
    Ok(())
}

/// Martin bounds and the equicontinuity sandwich, computed from the star
/// entries with plain arithmetic.
pub fn check_martin_bounds(inst: &Instance) -> Check {
    let n = inst.plain.len();
    let s = star_of(inst);
    let st = star_plain(&s);
    let b = inst.kernel.basepoint();
    let k: Plain = (0..n).map(|x| (0..n).map(|y| st[x][y] - st[b][y]).collect()).collect();
    for y in 0..n {
        if fn_plain(&martin_column(&s, y).unwrap()) != (0..n).map(|x| k[x][y]).collect::<Vec<_>>() {
            return fail(inst, format!("Martin column {y} differs from A*<x,y> - A*<b,y>"));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if !(st[x][b] <= k[x][y] && k[x][y] <= -st[b][x]) {
                return fail(inst, format!("Martin bounds fail at ({x},{y})"));
            }
            for z in 0..n {
                let d = k[x][z] - k[y][z];
                if !(st[x][y] <= d && d <= -st[y][x]) {
                    return fail(inst, format!("sandwich fails at ({x},{y},{z})"));
                }
            }
        }
    }
    for obj in martin_kernel(&s).unwrap() {
        if !is_superharmonic(&inst.kernel, &obj.column) {
            return fail(inst, "a Martin column is not super-harmonic");
        }
        let col = fn_plain(&obj.column);
        if plain_apply(&inst.plain, &col).iter().zip(&col).any(|(a, c)| a > c) {
            return fail(inst, "oracle finds a Martin column that is not super-harmonic");
        }
    }
    Ok(())
}

/// For `u = A* g`: `mu(u, class of x) = A*<b,x> + u(x)` for every state, and
/// `u` is the sup over Martin columns of `mu(u, w) + w`.
pub fn check_superharmonic_measure(inst: &Instance, r: &mut ChaCha8Rng) -> Check {
    let n = inst.plain.len();
    let s = star_of(inst);
    let st = star_plain(&s);
    let b = inst.kernel.basepoint();
    let g = random_int_vec(r, n, -6, 6);
    let u = plain_apply(&st, &g);
    let uf = fn_from(&u);
    if !is_superharmonic(&inst.kernel, &uf) {
        return fail(inst, "A* g is not super-harmonic");
    }
    let objs = martin_kernel(&s).unwrap();
    let classes = recurrence_classes(&s);
    for x in 0..n {
        let obj = &objs[classes.class_of(x)];
        if mu(&uf, obj, &s) != MaxPlusValue::Finite(st[b][x] + u[x]) {
            return fail(inst, format!("mu(u, class of {x}) differs from A*<b,x> + u(x)"));
        }
    }
    let rebuilt = objs
        .iter()
        .fold(MaxPlusFunction::constant(n, MaxPlusValue::NegInf), |acc, w| {
            acc.oplus(&w.column.shift(mu(&uf, w, &s)))
        });
    if rebuilt != uf {
        return fail(inst, "u is not the sup of mu(u,w) + w");
    }
    Ok(())
}

/// Random harmonic `h = represent(ν)`: round trip is exact and the spectral
/// measure dominates ν.
pub fn check_representation(inst: &Instance, r: &mut ChaCha8Rng, samples: usize) -> Check {
    let s = star_of(inst);
    let mmin = minimal_martin_space(&s).unwrap();
    if mmin.is_empty() {
        return fail(inst, "minimal space is empty");
    }
    for _ in 0..samples {
        let nu = random_weights(r, mmin.len());
        let h = represent(&nu, &mmin).unwrap();
        let hp = fn_plain(&h);
        if plain_apply(&inst.plain, &hp) != hp {
            return fail(inst, "represent(nu) is not harmonic by the oracle");
        }
        let mu_h = spectral_measure(&h, &mmin, &s).unwrap();
        if mu_h.iter().zip(&nu).any(|(m, v)| m < v) {
            return fail(inst, "spectral measure is not >= the generating weights");
        }
        if represent(&mu_h, &mmin).unwrap() != h {
            return fail(inst, "represent(spectral_measure(h)) != h");
        }
    }
    Ok(())
}

/// Normalized harmonic candidates pass `is_extremal` exactly when they are
/// minimal columns; every failing one splits as `max(u, v)`.
pub fn check_extremality(inst: &Instance, r: &mut ChaCha8Rng, samples: usize) -> Check {
    let s = star_of(inst);
    let b = inst.kernel.basepoint();
    let mmin = minimal_martin_space(&s).unwrap();
    let minimal_cols: Vec<&MaxPlusFunction> = mmin.iter().map(|w| &w.column).collect();

    let mut candidates: Vec<MaxPlusFunction> = minimal_cols.iter().map(|c| (*c).clone()).collect();
    for _ in 0..samples {
        let h = represent(&random_weights(r, mmin.len()), &mmin).unwrap();
        let hb = h[b];
        candidates.push(h.shift(-hb));
    }
    // harmonic Martin columns of the whole kernel, and non-harmonic ones
    // which must be rejected by the harmonicity precondition
    for obj in martin_kernel(&s).unwrap() {
        if is_harmonic(&inst.kernel, &obj.column) {
            candidates.push(obj.column.clone());
        } else if is_extremal(&obj.column, &mmin, &s).is_ok() {
            return fail(inst, "non-harmonic column accepted by is_extremal");
        }
    }

    for h in &candidates {
        let extremal = is_extremal(h, &mmin, &s).map_err(|e| format!("is_extremal: {e}"))?;
        let is_min = minimal_cols.contains(&h);
        if extremal != is_min {
            return fail(inst, format!("is_extremal = {extremal} but minimal = {is_min} for {h:?}"));
        }
        if extremal {
            let i = extremal_witness(h, &mmin, &s).unwrap().unwrap();
            if &mmin.objects()[i].column != h {
                return fail(inst, "extremal witness is not h itself");
            }
            continue;
        }
        let (u, v) = split_non_extremal(h, &mmin, &s)
            .unwrap()
            .ok_or_else(|| format!("instance {}: no split for non-extremal {h:?}", inst.seed))?;
        let (up, vp) = (fn_plain(&u), fn_plain(&v));
        if plain_apply(&inst.plain, &up) != up || plain_apply(&inst.plain, &vp) != vp {
            return fail(inst, "split parts are not harmonic");
        }
        if u.oplus(&v) != *h || u == *h || v == *h {
            return fail(inst, "split is not a proper decomposition h = max(u, v)");
        }
    }
    Ok(())
}

/// Downhill paths are almost-optimal and almost-geodesic, and converge to a
/// minimal column `w` with `mu_h(w) + w(x0) = h(x0)`.
pub fn check_downhill(inst: &Instance, r: &mut ChaCha8Rng, samples: usize) -> Check {
    let n = inst.plain.len();
    let s = star_of(inst);
    let mmin = minimal_martin_space(&s).unwrap();
    for _ in 0..samples {
        let h = represent(&random_weights(r, mmin.len()), &mmin).unwrap();
        let x0 = r.gen_range(0..n);
        let eps = r.gen_range(0.01..2.0);
        let path = downhill_path(&inst.kernel, &h, x0, eps, 4 * n + 2).unwrap();
        if !is_almost_optimal(&path, &h, eps, &inst.kernel).unwrap() {
            return fail(inst, "downhill path is not almost-optimal");
        }
        if !is_almost_geodesic(&path, eps, &s).unwrap() {
            return fail(inst, "downhill path is not almost-geodesic");
        }
        // each step loses at most its slack against the oracle
        let st = path.states();
        let hp = fn_plain(&h);
        for k in 0..st.len() - 1 {
            let lhs = hp[st[k]];
            let rhs = inst.plain[st[k]][st[k + 1]] + hp[st[k + 1]] + downhill_slack(eps, k);
            if lhs > rhs {
                return fail(inst, format!("downhill step {k} exceeds its slack"));
            }
        }
        let lim = geodesic_limit(&path, eps, &s).map_err(|e| format!("geodesic_limit: {e}"))?;
        if !lim.minimal || !mmin.iter().any(|w| w.column == lim.column) {
            return fail(inst, "limit is not in the minimal space");
        }
        let m = spectral_measure(&h, &mmin, &s).unwrap();
        let i = mmin.iter().position(|w| w.column == lim.column).unwrap();
        if m[i].otimes(lim.column[x0]) != h[x0] {
            return fail(inst, "limit does not carry h(x0)");
        }
    }
    Ok(())
}

/// Random unit-step paths: almost-optimal implies almost-geodesic, and
/// `J` is nonpositive and additive. Returns the number of paths examined.
pub fn check_random_paths(inst: &Instance, r: &mut ChaCha8Rng, samples: usize) -> std::result::Result<usize, String> {
    let n = inst.plain.len();
    let s = star_of(inst);
    let mmin = minimal_martin_space(&s).unwrap();
    for _ in 0..samples {
        let len = r.gen_range(1..=10);
        let states: Vec<usize> = if r.gen_bool(0.5) {
            (0..len).map(|_| r.gen_range(0..n)).collect()
        } else {
            // follow finite edges when possible
            let mut v = vec![r.gen_range(0..n)];
            while v.len() < len {
                let x = *v.last().unwrap();
                let next: Vec<usize> = (0..n).filter(|&y| inst.plain[x][y] != NI).collect();
                v.push(next[r.gen_range(0..next.len())]);
            }
            v
        };
        let mut times = vec![0u64];
        for _ in 1..len {
            times.push(times.last().unwrap() + r.gen_range(1..=3));
        }
        let path = DiscretePath::new(times, states).unwrap();

        let h = represent(&random_weights(r, mmin.len()), &mmin).unwrap();
        let eps = r.gen_range(0.0..400.0);
        if is_almost_optimal(&path, &h, eps, &inst.kernel).unwrap()
            && !is_almost_geodesic(&path, eps, &s).unwrap()
        {
            return fail(inst, "almost-optimal path is not almost-geodesic");
        }

        let m = path.len();
        for a in 0..m {
            let jaa = j_functional(&path, a, a, &s).unwrap();
            if jaa != MaxPlusValue::ZERO {
                return fail(inst, "J(s,s) != 0");
            }
            for b in a..m {
                let jab = j_functional(&path, a, b, &s).unwrap();
                if jab > MaxPlusValue::ZERO {
                    return fail(inst, format!("J({a},{b}) = {jab} > 0"));
                }
                for c in b..m {
                    let lhs = j_functional(&path, a, c, &s).unwrap();
                    let rhs = jab.otimes(j_functional(&path, b, c, &s).unwrap());
                    if lhs != rhs {
                        return fail(inst, format!("J not additive on ({a},{b},{c})"));
                    }
                }
            }
        }
    }
    Ok(samples)
}
