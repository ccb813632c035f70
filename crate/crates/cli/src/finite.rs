use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::Args;
use maxplus_core::io::{function_from_json, function_to_json_value, kernel_from_csv, kernel_from_json, matrix_to_csv};
use maxplus_core::martin::{extremal_witness, split_non_extremal};
use maxplus_core::{
    downhill_path, geodesic_limit, is_almost_geodesic, is_almost_optimal, is_harmonic,
    is_superharmonic, kleene_star, martin_kernel, max_cycle_mean, minimal_martin_space, normalize,
    recurrence_classes, represent as represent_nu, spectral_measure, KernelMatrix, MaxPlusFunction,
    MaxPlusValue, StarMatrix,
};
use serde_json::{json, Value};

use crate::output::{emit_json, emit_text};
use crate::Output;

#[derive(Args)]
pub struct KernelArgs {
    /// Kernel file, JSON or CSV (chosen by extension).
    #[arg(long)]
    pub kernel: PathBuf,
    /// Basepoint label, overriding the one in the file.
    #[arg(long)]
    pub basepoint: Option<String>,
    /// Subtract the maximal cycle mean before computing the star.
    #[arg(long)]
    pub normalize: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args)]
pub struct StarArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    /// Output format.
    #[arg(long, value_parser = ["json", "csv"], default_value = "json")]
    pub format: String,
}

#[derive(Args)]
pub struct FunctionArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    /// Function file: a JSON object mapping state labels to values.
    #[arg(long)]
    pub function: PathBuf,
}

#[derive(Args)]
pub struct DownhillArgs {
    #[command(flatten)]
    pub function: FunctionArgs,
    /// Starting state label.
    #[arg(long)]
    pub start: String,
    #[arg(long, default_value_t = 0.1)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 20)]
    pub steps: usize,
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_kernel(args: &KernelArgs) -> anyhow::Result<KernelMatrix> {
    let text = read(&args.kernel)?;
    let is_csv = args.kernel.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    let mut k = if is_csv { kernel_from_csv(&text)? } else { kernel_from_json(&text)? };
    if let Some(label) = &args.basepoint {
        let b = state(&k, label)?;
        k = k.with_basepoint(b)?;
    }
    if args.normalize {
        let lambda = max_cycle_mean(&k)?;
        k = normalize(&k, lambda)?;
    }
    Ok(k)
}

fn state(k: &KernelMatrix, label: &str) -> anyhow::Result<usize> {
    k.state_index(label).with_context(|| format!("unknown state {label:?}"))
}

fn load_function(args: &FunctionArgs, k: &KernelMatrix) -> anyhow::Result<MaxPlusFunction> {
    Ok(function_from_json(&read(&args.function)?, k.states())?)
}

fn labels(k: &KernelMatrix, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| k.states()[i].clone()).collect()
}

fn values(v: &[MaxPlusValue]) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

pub fn star(args: StarArgs) -> anyhow::Result<()> {
    let k = load_kernel(&args.kernel)?;
    let s = kleene_star(&k)?;
    if args.format == "csv" {
        return emit_text(&args.kernel.output, &matrix_to_csv(k.states(), s.entries()));
    }
    let n = s.dim();
    let diag_ok = (0..n).all(|x| s.get(x, x) == MaxPlusValue::ZERO);
    let tri_ok = (0..n).all(|x| {
        (0..n).all(|y| (0..n).all(|z| s.get(x, z).otimes(s.get(z, y)).approx_le(s.get(x, y))))
    });
    let ok = |b: bool| if b { "ok" } else { "FAILED" };
    let mut diagnostics = vec![
        format!("diagonal zero: {}", ok(diag_ok)),
        format!("triangular inequality: {}", ok(tri_ok)),
    ];
    if s.is_finite() {
        diagnostics.push("finite: ok".into());
    } else {
        diagnostics.push(format!(
            "finite: no, {} entries are -inf (Martin kernel unavailable)",
            s.infinite_entries().len()
        ));
    }
    emit_json(
        &args.kernel.output,
        json!({
            "states": k.states(),
            "basepoint": k.states()[k.basepoint()],
            "star": serde_json::to_value(s.entries().to_rows())?,
            "diagnostics": diagnostics,
        }),
    )
}

pub fn eigenvalue(args: KernelArgs) -> anyhow::Result<()> {
    let k = load_kernel(&args)?;
    let lambda = max_cycle_mean(&k)?;
    emit_json(&args.output, json!({ "max_cycle_mean": lambda }))
}

fn finite_star(k: &KernelMatrix) -> anyhow::Result<StarMatrix> {
    let s = kleene_star(k)?;
    s.require_finite()?;
    Ok(s)
}

pub fn classes(args: KernelArgs) -> anyhow::Result<()> {
    let k = load_kernel(&args)?;
    let s = kleene_star(&k)?;
    let p = recurrence_classes(&s);
    let classes: Vec<Vec<String>> = p.classes().iter().map(|c| labels(&k, c)).collect();
    emit_json(&args.output, json!({ "classes": classes }))
}

pub fn martin(args: KernelArgs) -> anyhow::Result<()> {
    let k = load_kernel(&args)?;
    let s = finite_star(&k)?;
    let objects: Vec<Value> = martin_kernel(&s)?
        .iter()
        .map(|o| {
            json!({
                "class": labels(&k, &o.representatives),
                "column": function_to_json_value(&o.column, k.states()),
                "harmonic": o.harmonic,
                "minimal": o.minimal,
            })
        })
        .collect();
    emit_json(
        &args.output,
        json!({ "basepoint": k.states()[k.basepoint()], "columns": objects }),
    )
}

pub fn harmonic_check(args: FunctionArgs) -> anyhow::Result<()> {
    let k = load_kernel(&args.kernel)?;
    let h = load_function(&args, &k)?;
    let image = k.apply(&h)?;
    emit_json(
        &args.kernel.output,
        json!({
            "harmonic": is_harmonic(&k, &h),
            "superharmonic": is_superharmonic(&k, &h),
            "image": function_to_json_value(&image, k.states()),
        }),
    )
}

pub fn represent(args: FunctionArgs) -> anyhow::Result<()> {
    let k = load_kernel(&args.kernel)?;
    let h = load_function(&args, &k)?;
    let s = finite_star(&k)?;
    let mmin = minimal_martin_space(&s)?;
    let nu = spectral_measure(&h, &mmin, &s)?;
    let rebuilt = represent_nu(&nu, &mmin)?;
    let residual = h
        .iter()
        .zip(rebuilt.iter())
        .map(|(a, b)| match (a, b) {
            (MaxPlusValue::Finite(x), MaxPlusValue::Finite(y)) => (x - y).abs(),
            _ if a == b => 0.0,
            _ => f64::INFINITY,
        })
        .fold(0.0, f64::max);
    let measure: Vec<Value> = mmin
        .iter()
        .zip(&nu)
        .map(|(w, m)| json!({ "class": labels(&k, &w.representatives), "weight": m }))
        .collect();
    emit_json(
        &args.kernel.output,
        json!({
            "spectral_measure": measure,
            "reconstruction": function_to_json_value(&rebuilt, k.states()),
            "residual": residual,
            "exact": rebuilt == h,
        }),
    )
}

pub fn extremal(args: FunctionArgs) -> anyhow::Result<()> {
    let k = load_kernel(&args.kernel)?;
    let h = load_function(&args, &k)?;
    let s = finite_star(&k)?;
    let mmin = minimal_martin_space(&s)?;
    let report = match extremal_witness(&h, &mmin, &s)? {
        Some(i) => json!({
            "extremal": true,
            "witness": labels(&k, &mmin.objects()[i].representatives),
        }),
        None => {
            let split = split_non_extremal(&h, &mmin, &s)?.map(|(u, v)| {
                json!({
                    "u": function_to_json_value(&u, k.states()),
                    "v": function_to_json_value(&v, k.states()),
                })
            });
            json!({ "extremal": false, "split": split })
        }
    };
    emit_json(&args.kernel.output, report)
}

pub fn downhill(args: DownhillArgs) -> anyhow::Result<()> {
    let fa = &args.function;
    let k = load_kernel(&fa.kernel)?;
    let h = load_function(fa, &k)?;
    let x0 = state(&k, &args.start)?;
    let s = finite_star(&k)?;
    let path = downhill_path(&k, &h, x0, args.epsilon, args.steps)?;
    let optimal = is_almost_optimal(&path, &h, args.epsilon, &k)?;
    let geodesic = is_almost_geodesic(&path, args.epsilon, &s)?;
    let limit = match geodesic_limit(&path, args.epsilon, &s) {
        Ok(o) => json!({
            "class": labels(&k, &o.representatives),
            "column": function_to_json_value(&o.column, k.states()),
        }),
        Err(e) => json!({ "error": e.to_string() }),
    };
    emit_json(
        &fa.kernel.output,
        json!({
            "epsilon": args.epsilon,
            "states": labels(&k, path.states()),
            "times": path.times(),
            "almost_optimal": optimal,
            "almost_geodesic": geodesic,
            "limit": limit,
            "values": values(&path.states().iter().map(|&x| h[x]).collect::<Vec<_>>()),
        }),
    )
}
