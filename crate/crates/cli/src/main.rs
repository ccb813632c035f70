//! `maxplus`: command-line front end for the finite Martin-boundary calculus
//! and the linear-quadratic example.
//!
//! Exit status is 0 on success, 1 on invalid input and 2 when a mathematical
//! hypothesis (finite star, nonpositive cycle mean, harmonicity) fails.

mod finite;
mod lq;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "maxplus", version, about = "Max-plus Martin boundary calculus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Output {
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Kleene star of a kernel, with diagnostics.
    Star(finite::StarArgs),
    /// Maximal cycle mean of a kernel.
    Eigenvalue(finite::KernelArgs),
    /// Recurrence classes of the star.
    Classes(finite::KernelArgs),
    /// Martin kernel columns with harmonic and minimal flags.
    Martin(finite::KernelArgs),
    /// Harmonicity and super-harmonicity of a function.
    HarmonicCheck(finite::FunctionArgs),
    /// Spectral measure of a harmonic function and the round-trip residual.
    Represent(finite::FunctionArgs),
    /// Whether a normalized harmonic function is an extremal generator.
    Extremal(finite::FunctionArgs),
    /// Greedy downhill path for a harmonic function, with both path checks.
    Downhill(finite::DownhillArgs),
    /// Kleene star A*(x, y) of the LQ model.
    LqStar(lq::StarArgs),
    /// Horofunction h_n(x) of the LQ model.
    LqHorofunction(lq::HorofunctionArgs),
    /// Grid check of S^t h = h for a target function.
    LqVerify(lq::VerifyArgs),
    /// Closed-loop trajectory under the gradient feedback.
    LqFlow(lq::FlowArgs),
    /// Horosphere contours as SVG and CSV files.
    LqHorosphere(lq::HorosphereArgs),
}

fn configure_threads() -> anyhow::Result<()> {
    let threads = match std::env::var("MAXPLUS_THREADS") {
        Ok(v) if !v.trim().is_empty() => v
            .trim()
            .parse::<usize>()
            .map_err(|_| anyhow::anyhow!("MAXPLUS_THREADS must be a nonnegative integer, got {v:?}"))?,
        _ => 0,
    };
    if threads > 0 {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    configure_threads()?;
    match cli.command {
        Command::Star(a) => finite::star(a),
        Command::Eigenvalue(a) => finite::eigenvalue(a),
        Command::Classes(a) => finite::classes(a),
        Command::Martin(a) => finite::martin(a),
        Command::HarmonicCheck(a) => finite::harmonic_check(a),
        Command::Represent(a) => finite::represent(a),
        Command::Extremal(a) => finite::extremal(a),
        Command::Downhill(a) => finite::downhill(a),
        Command::LqStar(a) => lq::star(a),
        Command::LqHorofunction(a) => lq::horofunction(a),
        Command::LqVerify(a) => lq::verify(a),
        Command::LqFlow(a) => lq::flow(a),
        Command::LqHorosphere(a) => lq::horosphere(a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let assumption = e
                .downcast_ref::<maxplus_core::Error>()
                .is_some_and(maxplus_core::Error::is_assumption_violation);
            let msg = format!("{e:#}").replace('\n', " ");
            if assumption {
                eprintln!("error: assumption violated: {msg}");
                ExitCode::from(2)
            } else {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
        }
    }
}
