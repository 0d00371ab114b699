//! CSV and table rendering for solve and sweep results.
//!
//! CSV numbers are written with 17 significant digits (`{:.16e}`) so that
//! parsing an emitted file reproduces the in-memory values bit for bit.

use cpburgers::discretization::SpaceGrid;
use cpburgers::manufactured::{ConvergenceReport, ConvergenceRow, ManufacturedProblem};
use cpburgers::solver::SolveReport;
use cpburgers::{Error, Result};

pub const CONVERGENCE_HEADER: &str = "level,xi,theta,time_ms,iterations";

/// Render a float with 17 significant digits; round-trips through `parse`.
pub fn format_sig(v: f64) -> String {
    format!("{v:.16e}")
}

/// CSV body for a convergence report: header plus one row per level, `\n`
/// line endings, empty `theta` on the first row.
pub fn convergence_csv(report: &ConvergenceReport) -> String {
    let mut out = String::with_capacity(64 * (report.rows.len() + 1));
    out.push_str(CONVERGENCE_HEADER);
    out.push('\n');
    for row in &report.rows {
        let theta = row.theta.map(|t| format_sig(t)).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            row.level,
            format_sig(row.xi),
            theta,
            row.time_ms,
            row.iterations
        ));
    }
    out
}

/// Parse a convergence CSV produced by [`convergence_csv`]. Exists to pin
/// the round-trip guarantee; the binary itself only ever writes.
#[cfg_attr(not(test), allow(dead_code))]
pub fn parse_convergence_csv(text: &str) -> Result<Vec<ConvergenceRow>> {
    let bad = |detail: String| Error::InvalidConfig {
        key: "csv".into(),
        detail,
    };
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == CONVERGENCE_HEADER => {}
        other => {
            return Err(bad(format!(
                "expected header `{CONVERGENCE_HEADER}`, got `{}`",
                other.unwrap_or("")
            )))
        }
    }
    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 5 {
            return Err(bad(format!("row {}: expected 5 fields", idx + 1)));
        }
        let parse_err = |what: &str| bad(format!("row {}: malformed {what}", idx + 1));
        rows.push(ConvergenceRow {
            level: fields[0].parse().map_err(|_| parse_err("level"))?,
            xi: fields[1].parse().map_err(|_| parse_err("xi"))?,
            theta: if fields[2].is_empty() {
                None
            } else {
                Some(fields[2].parse().map_err(|_| parse_err("theta"))?)
            },
            time_ms: fields[3].parse().map_err(|_| parse_err("time_ms"))?,
            iterations: fields[4].parse().map_err(|_| parse_err("iterations"))?,
        });
    }
    Ok(rows)
}

/// Human-readable table mirroring the usual error-table layout:
/// alpha, level, Xi, Theta, time, iterations.
pub fn convergence_table(report: &ConvergenceReport) -> String {
    let mut out = format!(
        "problem {}, {} sweep, alpha = {}\n\n",
        report.problem, report.axis, report.alpha
    );
    out.push_str(&format!(
        "{:>7}  {:>7}  {:>14}  {:>9}  {:>9}  {:>10}\n",
        "alpha", "level", "xi", "theta", "time_ms", "iterations"
    ));
    for row in &report.rows {
        let theta = row
            .theta
            .map(|t| format!("{t:9.5}"))
            .unwrap_or_else(|| format!("{:>9}", "-"));
        out.push_str(&format!(
            "{:>7}  {:>7}  {:>14.6e}  {}  {:>9}  {:>10}\n",
            report.alpha, row.level, row.xi, theta, row.time_ms, row.iterations
        ));
    }
    if let Some((level, err)) = &report.failure {
        out.push_str(&format!("{:>7}  {:>7}  FAILED: {err}\n", report.alpha, level));
    }
    out
}

/// CSV of the final solution profile: interior nodes with computed, exact,
/// and pointwise error columns.
pub fn profile_csv(
    problem: &ManufacturedProblem,
    report: &SolveReport,
    grid: &SpaceGrid,
    t: f64,
) -> String {
    let level = report.final_level();
    let mut out = String::from("x,u,exact,error\n");
    for (i, v) in level.as_slice().iter().enumerate() {
        let x = grid.x(i + 1);
        let exact = problem.exact(x, t);
        out.push_str(&format!(
            "{},{},{},{}\n",
            format_sig(x),
            format_sig(*v),
            format_sig(exact),
            format_sig(v - exact)
        ));
    }
    out
}
