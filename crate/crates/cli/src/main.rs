//! Command-line driver: single solves, convergence sweeps, Mittag-Leffler
//! evaluation, and the verification suites.
//!
//! Exit codes: 0 success, 1 validation error (bad flags, config keys, or
//! parameter domains), 2 numerical failure (iteration or quadrature
//! non-convergence, singular solves), 3 verification-suite failure.

mod config;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use cpburgers::cpkernel::CpParams;
use cpburgers::discretization::SpaceGrid;
use cpburgers::manufactured::{
    convergence_study, from_label, max_error, SweepAxis, SweepConfig,
};
use cpburgers::mlf::prabhakar_eval;
use cpburgers::solver::{solve, NewtonSettings};
use cpburgers::verify;
use cpburgers::{Error, Result};

use config::{OutputFormat, Overrides, RunConfig};

#[derive(Parser)]
#[command(
    name = "cpburgers",
    version,
    about = "Implicit finite-difference solver for a nonlinear diffusion equation \
             with a Prabhakar-kernel fractional time derivative"
)]
struct Cli {
    /// Path to a key=value configuration file (flags override its entries).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one solve and report the max-norm error against the exact solution.
    Solve(Overrides),
    /// Refine the time or space axis and tabulate errors and observed orders.
    Converge(Overrides),
    /// Evaluate the three-parameter Mittag-Leffler function E_{a,b}^g(z).
    Mlf(MlfArgs),
    /// Run the built-in verification suites.
    Verify(VerifyArgs),
}

#[derive(clap::Args)]
struct MlfArgs {
    /// First series parameter (a > 0).
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    /// Second series parameter (b > 0).
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    /// Upper parameter g (g = 1 reduces to the two-parameter function).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    g: f64,
    /// Argument z (|z| <= 20 is the supported series range).
    #[arg(long, allow_negative_numbers = true)]
    z: f64,
    /// Series stopping tolerance.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// Run only the named suite (see the suite list in any run's output).
    #[arg(long)]
    suite: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0u8,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            if err.is_validation() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    let file = cli.config.as_deref();
    match cli.command {
        Command::Solve(o) => run_solve(RunConfig::resolve(file, &o)?),
        Command::Converge(o) => run_converge(RunConfig::resolve(file, &o)?),
        Command::Mlf(args) => run_mlf(&args),
        Command::Verify(args) => run_verify(&args),
    }
}

/// Write `text` to the configured destination (stdout when no path is set).
fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Error::InvalidConfig {
                key: "output.path".into(),
                detail: format!("cannot write `{}`: {e}", p.display()),
            })?;
            println!("wrote {}", p.display());
            Ok(())
        }
    }
}

fn run_solve(cfg: RunConfig) -> Result<ExitCode> {
    let params = CpParams::new(cfg.alpha, cfg.rho, cfg.gamma, cfg.omega)?;
    let problem = from_label(&cfg.problem, cfg.length, &params)?;
    let grid = SpaceGrid::new(cfg.cells, cfg.length)?;
    let settings = NewtonSettings::new(cfg.max_step, cfg.it_acc)?;
    let spec = problem.problem_spec(grid, cfg.final_time, cfg.steps)?;
    let report = solve(&spec, &settings)?;
    let xi = max_error(&problem, &report, &grid, spec.tau());

    let text = match cfg.output_format {
        OutputFormat::Table => format!(
            "problem:    {}\n\
             kernel:     alpha = {}, rho = {}, gamma = {}, omega = {}\n\
             grid:       M = {} cells, N = {} steps, L = {}, T = {}\n\
             max error:  {}\n\
             iterations: {} total, {} max per level\n\
             time:       {} ms\n",
            problem.label(),
            cfg.alpha,
            cfg.rho,
            cfg.gamma,
            cfg.omega,
            cfg.cells,
            cfg.steps,
            cfg.length,
            cfg.final_time,
            output::format_sig(xi),
            report.total_iterations(),
            report.max_iterations(),
            report.wall_time.as_millis()
        ),
        OutputFormat::Csv => output::profile_csv(&problem, &report, &grid, cfg.final_time),
    };
    emit(cfg.output_path.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn run_converge(cfg: RunConfig) -> Result<ExitCode> {
    let params = CpParams::new(cfg.alpha, cfg.rho, cfg.gamma, cfg.omega)?;
    let problem = from_label(&cfg.problem, cfg.length, &params)?;
    let settings = NewtonSettings::new(cfg.max_step, cfg.it_acc)?;
    let sweep = SweepConfig {
        axis: cfg.sweep_axis,
        levels: cfg.sweep_levels.clone(),
        fixed: match cfg.sweep_axis {
            SweepAxis::Time => cfg.cells,
            SweepAxis::Space => cfg.steps,
        },
        length: cfg.length,
        final_time: cfg.final_time,
    };
    let report = convergence_study(&problem, &sweep, &settings)?;

    let text = match cfg.output_format {
        OutputFormat::Table => output::convergence_table(&report),
        OutputFormat::Csv => output::convergence_csv(&report),
    };
    emit(cfg.output_path.as_deref(), &text)?;

    if let Some((level, err)) = &report.failure {
        eprintln!("error: sweep level {level} failed: {err}");
        return Ok(if err.is_validation() {
            ExitCode::from(1)
        } else {
            ExitCode::from(2)
        });
    }
    Ok(ExitCode::SUCCESS)
}

fn run_mlf(args: &MlfArgs) -> Result<ExitCode> {
    let eval = prabhakar_eval(args.a, args.b, args.g, args.z, args.tol)?;
    println!(
        "E_{{{},{}}}^{{{}}}({}) = {}",
        args.a,
        args.b,
        args.g,
        args.z,
        output::format_sig(eval.value)
    );
    println!("terms: {}", eval.terms);
    if eval.precision_warning {
        println!("warning: severe cancellation in the series; the result may be inaccurate");
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let results = match &args.suite {
        Some(name) => match verify::run_suite(name) {
            Some(r) => vec![r],
            None => {
                return Err(Error::InvalidConfig {
                    key: "suite".into(),
                    detail: format!(
                        "unknown suite `{name}`; available: {}",
                        verify::suite_names().join(", ")
                    ),
                })
            }
        },
        None => verify::run_all(),
    };

    let mut failed = 0usize;
    for r in &results {
        let status = if r.passed { "ok  " } else { "FAIL" };
        println!(
            "{status} {:<24} {:>5} checks  {:>8.1} ms",
            r.name,
            r.checks,
            r.duration.as_secs_f64() * 1e3
        );
        const SHOWN: usize = 8;
        for f in r.failures.iter().take(SHOWN) {
            println!("     - {f}");
        }
        if r.failures.len() > SHOWN {
            println!("     - ... and {} more", r.failures.len() - SHOWN);
        }
        failed += usize::from(!r.passed);
    }
    if failed == 0 {
        println!("all {} suites passed", results.len());
        Ok(ExitCode::SUCCESS)
    } else {
        println!("{failed} of {} suites FAILED", results.len());
        Ok(ExitCode::from(3))
    }
}
