use std::path::PathBuf;

use anyhow::bail;
use clap::{Args, ValueEnum};
use maxplus_core::lq::contour::{contours_to_csv, contours_to_svg, BBox, SampledField};
use maxplus_core::lq::flow::{almost_optimality_gap, feedback_trajectory_with_gain};
use maxplus_core::lq::kernel::optimal_horizon;
use maxplus_core::lq::{horofunction as horo, star_kernel, verify_harmonic_lq, GridSpec};
use maxplus_core::Error;
use serde_json::{json, Value};

use crate::output::{emit_json, number, write_file};
use crate::Output;

/// Comma-separated reals.
fn parse_vec(s: &str) -> Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|c| c.trim().parse::<f64>().map_err(|e| format!("{c:?}: {e}")))
        .collect::<Result<_, _>>()?;
    if v.iter().any(|x| !x.is_finite()) {
        return Err("coordinates must be finite".into());
    }
    Ok(v)
}

/// Unit direction; a direction off by more than 1e-9 is rescaled with a
/// warning.
fn unit(n: &[f64]) -> anyhow::Result<Vec<f64>> {
    let norm = n.iter().map(|c| c * c).sum::<f64>().sqrt();
    if norm == 0.0 {
        bail!("direction must be nonzero");
    }
    if (norm - 1.0).abs() > 1e-9 {
        eprintln!("warning: direction has norm {norm}; normalizing to a unit vector");
    }
    Ok(n.iter().map(|c| c / norm).collect())
}

fn point_list(v: &[Vec<f64>]) -> Value {
    Value::Array(v.iter().map(|p| Value::Array(p.iter().map(|&c| number(c)).collect())).collect())
}

#[derive(Args)]
pub struct StarArgs {
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub y: Vec<f64>,
    #[command(flatten)]
    pub output: Output,
}

pub fn star(a: StarArgs) -> anyhow::Result<()> {
    let value = star_kernel(&a.x, &a.y, a.lambda)?;
    let horizon = match optimal_horizon(&a.x, &a.y, a.lambda) {
        Ok(t) => number(t),
        Err(Error::BothEndpointsZeroWithLambdaZero) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    emit_json(&a.output, json!({ "value": value, "optimal_horizon": horizon }))
}

#[derive(Args)]
pub struct HorofunctionArgs {
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    /// Direction of the boundary point.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,1")]
    pub n: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x: Vec<f64>,
    #[command(flatten)]
    pub output: Output,
}

pub fn horofunction(a: HorofunctionArgs) -> anyhow::Result<()> {
    let n = unit(&a.n)?;
    let value = horo(&a.x, &n, a.lambda)?;
    emit_json(&a.output, json!({ "value": value, "n": n }))
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Target {
    /// h(x) = -|x|²
    Stable,
    /// h(x) = +|x|²
    Unstable,
    /// h(x) = h_n(x)
    Horofunction,
}

impl Target {
    fn build(self, n: Vec<f64>, lambda: f64) -> impl Fn(&[f64]) -> f64 + Sync {
        move |x: &[f64]| {
            let r2: f64 = x.iter().map(|c| c * c).sum();
            match self {
                Target::Stable => -r2,
                Target::Unstable => r2,
                Target::Horofunction => horo(x, &n, lambda).expect("validated direction"),
            }
        }
    }
}

#[derive(Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "stable")]
    pub target: Target,
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t: f64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,1")]
    pub n: Vec<f64>,
    /// Probe points separated by ';', e.g. "0,0;1,-1". Defaults to a 5x5
    /// lattice of radius --probe-radius.
    #[arg(long, allow_hyphen_values = true)]
    pub probes: Option<String>,
    #[arg(long, default_value_t = 1.4)]
    pub probe_radius: f64,
    /// Grid half-width; defaults to 4 max|probe|.
    #[arg(long)]
    pub half_width: Option<f64>,
    #[arg(long, default_value_t = 0.01)]
    pub spacing: f64,
    #[command(flatten)]
    pub output: Output,
}

fn lattice(radius: f64, dim: usize) -> Vec<Vec<f64>> {
    let axis: Vec<f64> = (-2..=2).map(|i| radius * i as f64 / 2.0).collect();
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|p: Vec<f64>| {
                axis.iter().map(move |&c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn verify(a: VerifyArgs) -> anyhow::Result<()> {
    let n = unit(&a.n)?;
    let probes: Vec<Vec<f64>> = match &a.probes {
        Some(s) => s.split(';').map(parse_vec).collect::<Result<_, _>>().map_err(anyhow::Error::msg)?,
        None => lattice(a.probe_radius, n.len()),
    };
    if matches!(a.target, Target::Horofunction) && probes.iter().any(|p| p.len() != n.len()) {
        bail!("probes must have the dimension of --n ({})", n.len());
    }
    let grid = match a.half_width {
        Some(w) => GridSpec::new(w, a.spacing)?,
        None => GridSpec::new(GridSpec::default_for(&probes).half_width, a.spacing)?,
    };
    let h = a.target.build(n, a.lambda);
    let report = verify_harmonic_lq(&h, a.lambda, a.t, &probes, grid)?;
    emit_json(&a.output, serde_json::to_value(&report)?)
}

#[derive(Args)]
pub struct FlowArgs {
    #[arg(long, value_enum, default_value = "stable")]
    pub target: Target,
    #[arg(long, default_value_t = 0.0)]
    pub lambda: f64,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,1")]
    pub n: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub x0: Vec<f64>,
    #[arg(long, default_value_t = 1.0)]
    pub duration: f64,
    #[arg(long, default_value_t = 0.01)]
    pub step: f64,
    /// Feedback gain: 1 integrates x' = ∇h, 0.5 is the optimal feedback.
    #[arg(long, default_value_t = 1.0)]
    pub gain: f64,
    #[command(flatten)]
    pub output: Output,
}

pub fn flow(a: FlowArgs) -> anyhow::Result<()> {
    let n = unit(&a.n)?;
    if matches!(a.target, Target::Horofunction) && a.x0.len() != n.len() {
        bail!("--x0 must have the dimension of --n ({})", n.len());
    }
    let h = a.target.build(n, a.lambda);
    let traj = feedback_trajectory_with_gain(&h, &a.x0, a.duration, a.step, a.gain)?;
    let gap = almost_optimality_gap(&h, &traj, a.lambda)?;
    emit_json(
        &a.output,
        json!({
            "gain": a.gain,
            "times": traj.times.iter().map(|&t| number(t)).collect::<Vec<_>>(),
            "states": point_list(&traj.states),
            "almost_optimality_gap": gap,
        }),
    )
}

#[derive(Args)]
pub struct HorosphereArgs {
    /// Eigenvalues, one figure each.
    #[arg(long, value_delimiter = ',', default_value = "0,1")]
    pub lambda: Vec<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "0,1")]
    pub n: Vec<f64>,
    /// xmin,xmax,ymin,ymax
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_value = "-3,3,-3,3")]
    pub bbox: Vec<f64>,
    /// Cells per axis.
    #[arg(long, default_value_t = 300)]
    pub resolution: usize,
    /// Levels; those outside the range of h_n on the box are skipped.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true,
          default_value = "-4,-2,-1,-0.5,0.5,1,2,4")]
    pub levels: Vec<f64>,
    /// Directory receiving horosphere_lambda<λ>.svg and .csv.
    #[arg(long, default_value = "horospheres")]
    pub out_dir: PathBuf,
    #[command(flatten)]
    pub output: Output,
}

pub fn horosphere(a: HorosphereArgs) -> anyhow::Result<()> {
    let n = unit(&a.n)?;
    if n.len() != 2 {
        bail!("horospheres are drawn in the plane: --n must have 2 coordinates");
    }
    if a.bbox.len() != 4 {
        bail!("--bbox needs xmin,xmax,ymin,ymax");
    }
    let bbox = BBox::new(a.bbox[0], a.bbox[1], a.bbox[2], a.bbox[3])?;
    let mut figures = Vec::new();
    for &lambda in &a.lambda {
        let h = |x: &[f64]| horo(x, &n, lambda).expect("validated direction");
        // validate lambda before sampling
        horo(&[0.0, 0.0], &n, lambda)?;
        let field = SampledField::sample(&h, bbox, a.resolution)?;
        let (lo, hi) = field.range();
        let mut polylines = Vec::new();
        let mut drawn = Vec::new();
        let mut skipped = Vec::new();
        for &level in &a.levels {
            if level <= lo || level >= hi {
                skipped.push(level);
                continue;
            }
            polylines.extend(field.contour(level)?);
            drawn.push(level);
        }
        if drawn.is_empty() {
            return Err(Error::EmptyContour { level: a.levels.first().copied().unwrap_or(f64::NAN) }.into());
        }
        let stem = format!("horosphere_lambda{lambda}");
        let svg_path = a.out_dir.join(format!("{stem}.svg"));
        let csv_path = a.out_dir.join(format!("{stem}.csv"));
        let title = format!("Horospheres of the LQ model, lambda = {lambda}, n = ({}, {})", n[0], n[1]);
        write_file(&svg_path, &contours_to_svg(&polylines, bbox, &title))?;
        write_file(&csv_path, &contours_to_csv(&polylines))?;
        let (dx, dy) = field.spacing();
        figures.push(json!({
            "lambda": lambda,
            "svg": svg_path.display().to_string(),
            "csv": csv_path.display().to_string(),
            "levels": drawn,
            "skipped_levels": skipped,
            "polylines": polylines.len(),
            "points": polylines.iter().map(|p| p.points.len()).sum::<usize>(),
            "grid_spacing": dx.max(dy),
        }));
    }
    emit_json(&a.output, json!({ "n": n, "figures": figures }))
}
