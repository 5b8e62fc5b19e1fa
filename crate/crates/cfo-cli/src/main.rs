//! `cfo`: command-line harness for the central force optimizer.
//!
//! Exit codes: 0 success, 1 usage error, 2 verification failure, 3 runtime
//! error. All output is UTF-8 with LF line endings and '.' decimals.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use cfo::bench::{registry, FunctionId};
use cfo::engine::{CfoParams, RunOptions, RunOutput};
use cfo::report::{
    export_csv, export_json, render_series, render_sweep_table, verify_sweep, RunManifest,
    SeriesKind, VerifyGroup,
};
use cfo::sweep::{run_one, run_sweep, SweepConfig, SweepResult};

#[derive(Parser)]
#[command(name = "cfo", version, about = "Deterministic central force optimizer and benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List the benchmark registry (id, dimension, bounds, known maximum).
    ListFunctions {
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Run one configuration, or a one-dimensional sweep over gamma or
    /// probes per axis.
    Run {
        #[arg(long)]
        function: FunctionId,
        /// Fraction along the space diagonal where the initial probe lines
        /// intersect.
        #[arg(long, default_value_t = 0.5, conflicts_with = "gamma_sweep")]
        gamma: f64,
        /// Sweep gamma over 0, 0.1, ..., 1.0 instead of a single value.
        #[arg(long)]
        gamma_sweep: bool,
        #[arg(long, default_value_t = 2, conflicts_with = "ppa_sweep")]
        probes_per_axis: usize,
        /// Sweep probes per axis over 2, 4, ... up to the per-function cap.
        #[arg(long)]
        ppa_sweep: bool,
        /// Maximum number of steps (default: per-function).
        #[arg(long)]
        nt: Option<usize>,
        /// Gravitational constant.
        #[arg(long)]
        g: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        /// Time step.
        #[arg(long)]
        dt: Option<f64>,
        /// Initial repositioning factor.
        #[arg(long)]
        frep: Option<f64>,
        /// Per-step repositioning factor increment.
        #[arg(long)]
        dfrep: Option<f64>,
        /// Fitness saturation tolerance.
        #[arg(long)]
        sat_tol: Option<f64>,
        /// Noise seed (consumed only by the stochastic function F7).
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also emit per-step series files (best fitness, running best,
        /// average probe distance, best probe) for the best configuration.
        #[arg(long)]
        trace: bool,
        /// Directory to write result and series files into.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Manifest run id (default: current timestamp).
        #[arg(long)]
        run_id: Option<String>,
    },
    /// Run the full (probes per axis × gamma) reference grid.
    Sweep {
        #[arg(long)]
        function: FunctionId,
        /// Use the published reference grid (this is also the default).
        #[arg(long)]
        reference_grid: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        #[arg(long)]
        run_id: Option<String>,
    },
    /// Run the reference-grid sweep and compare against the embedded golden
    /// results.
    Verify {
        #[arg(long, required_unless_present = "all")]
        function: Option<FunctionId>,
        /// Verify every function in the suite.
        #[arg(long)]
        all: bool,
    },
}

fn timestamp_run_id() -> String {
    chrono::Local::now().format("%d-%m-%Y, %H:%M:%S").to_string()
}

fn write_out(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let path = dir.join(name);
    fs::write(&path, contents).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn emit_result(
    result: &SweepResult,
    manifest: &RunManifest,
    format: OutputFormat,
    out: Option<&Path>,
) -> Result<()> {
    let (rendered, ext) = match format {
        OutputFormat::Text => (render_sweep_table(result, manifest), "txt"),
        OutputFormat::Csv => (export_csv(result, manifest), "csv"),
        OutputFormat::Json => (export_json(result, manifest), "json"),
    };
    print!("{rendered}");
    if let Some(dir) = out {
        write_out(dir, &format!("{}_runs.{ext}", manifest.function), &rendered)?;
    }
    Ok(())
}

fn emit_trace(function: FunctionId, output: &RunOutput, out: Option<&Path>) -> Result<()> {
    let trace = output.trace.as_ref().expect("run was traced");
    let dir = out.map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
    for kind in SeriesKind::ALL {
        write_out(&dir, &format!("{function}_{}.txt", kind.file_stem()), &render_series(trace, kind))?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_run(
    function: FunctionId,
    gamma: f64,
    gamma_sweep: bool,
    probes_per_axis: usize,
    ppa_sweep: bool,
    nt: Option<usize>,
    g: Option<f64>,
    alpha: Option<f64>,
    beta: Option<f64>,
    dt: Option<f64>,
    frep: Option<f64>,
    dfrep: Option<f64>,
    sat_tol: Option<f64>,
    seed: u64,
    trace: bool,
    out: Option<PathBuf>,
    format: OutputFormat,
    run_id: Option<String>,
) -> Result<ExitCode> {
    let defaults = CfoParams::default();
    let base = CfoParams {
        g: g.unwrap_or(defaults.g),
        alpha: alpha.unwrap_or(defaults.alpha),
        beta: beta.unwrap_or(defaults.beta),
        delta_t: dt.unwrap_or(defaults.delta_t),
        frep_init: frep.unwrap_or(defaults.frep_init),
        delta_frep: dfrep.unwrap_or(defaults.delta_frep),
        gamma,
        probes_per_axis,
        nt: nt.unwrap_or_else(|| function.default_nt()),
        sat_tol: sat_tol.unwrap_or(defaults.sat_tol),
        ..defaults
    };
    let reference = SweepConfig::reference_grid(function);
    let config = SweepConfig {
        function,
        probes_per_axis_min: if ppa_sweep { 2 } else { probes_per_axis },
        probes_per_axis_max: if ppa_sweep {
            function.max_probes_per_axis()
        } else {
            probes_per_axis
        },
        probes_per_axis_step: 2,
        gamma_start: if gamma_sweep { reference.gamma_start } else { gamma },
        gamma_stop: if gamma_sweep { reference.gamma_stop } else { gamma },
        gamma_count: if gamma_sweep { reference.gamma_count } else { 1 },
        base,
        seed,
    };
    let result = run_sweep(&config)?;
    let manifest = RunManifest::new(run_id.unwrap_or_else(timestamp_run_id), &config);
    emit_result(&result, &manifest, format, out.as_deref())?;
    if trace {
        let best = &result.best_record;
        let best_params = CfoParams {
            gamma: best.gamma,
            probes_per_axis: best.np / best.nd,
            ..config.base.clone()
        };
        let output = run_one(
            function,
            &best_params,
            seed,
            best.run_number,
            RunOptions { trace: true, record_trajectories: false },
        )?;
        emit_trace(function, &output, out.as_deref())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(
    function: FunctionId,
    seed: u64,
    out: Option<PathBuf>,
    format: OutputFormat,
    run_id: Option<String>,
) -> Result<ExitCode> {
    let config = SweepConfig { seed, ..SweepConfig::reference_grid(function) };
    let result = run_sweep(&config)?;
    let manifest = RunManifest::new(run_id.unwrap_or_else(timestamp_run_id), &config);
    emit_result(&result, &manifest, format, out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(functions: &[FunctionId]) -> Result<ExitCode> {
    let mut all_passed = true;
    for &function in functions {
        let config = SweepConfig::reference_grid(function);
        let result = run_sweep(&config)?;
        let report = verify_sweep(&result);
        let verdict = if report.passed { "PASS" } else { "FAIL" };
        let group = match report.group {
            VerifyGroup::ExactZero => "exact-zero",
            VerifyGroup::Tolerance => "tolerance",
            VerifyGroup::Informational => "informational",
            VerifyGroup::Stochastic => "stochastic",
        };
        println!("{verdict} {function} [{group}]");
        for line in &report.lines {
            println!("    {line}");
        }
        all_passed &= report.passed;
    }
    Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_list_functions(format: OutputFormat) -> Result<ExitCode> {
    let entries = registry();
    match format {
        OutputFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&entries)?);
        }
        _ => {
            println!(
                "{:<5} {:>3}  {:>10}  {:>10}  {:>15}  {:>10}  {:>5}",
                "id", "nd", "x_min[0]", "x_max[0]", "f_max", "stochastic", "nt"
            );
            for e in &entries {
                println!(
                    "{:<5} {:>3}  {:>10}  {:>10}  {:>15}  {:>10}  {:>5}",
                    e.id, e.nd, e.x_min[0], e.x_max[0], e.f_max, e.stochastic, e.default_nt
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::ListFunctions { format } => cmd_list_functions(format),
        Command::Run {
            function,
            gamma,
            gamma_sweep,
            probes_per_axis,
            ppa_sweep,
            nt,
            g,
            alpha,
            beta,
            dt,
            frep,
            dfrep,
            sat_tol,
            seed,
            trace,
            out,
            format,
            run_id,
        } => cmd_run(
            function,
            gamma,
            gamma_sweep,
            probes_per_axis,
            ppa_sweep,
            nt,
            g,
            alpha,
            beta,
            dt,
            frep,
            dfrep,
            sat_tol,
            seed,
            trace,
            out,
            format,
            run_id,
        ),
        Command::Sweep { function, reference_grid: _, seed, out, format, run_id } => {
            cmd_sweep(function, seed, out, format, run_id)
        }
        Command::Verify { function, all } => {
            let functions: Vec<FunctionId> =
                if all { FunctionId::ALL.to_vec() } else { vec![function.expect("required")] };
            cmd_verify(&functions)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}
