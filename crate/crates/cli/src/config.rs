//! Run configuration: defaults, key=value file parsing, flag overrides.
//!
//! Precedence is defaults < configuration file < command-line flags. File
//! keys use dots (`sweep.axis`); the matching flags use dashes
//! (`--sweep-axis`). Unknown keys and malformed values are rejected with
//! the offending key named.

use std::path::{Path, PathBuf};

use cpburgers::manufactured::SweepAxis;
use cpburgers::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::InvalidConfig {
                key: "output.format".into(),
                detail: format!("unknown format `{other}`; expected table or csv"),
            }),
        }
    }
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub alpha: f64,
    pub rho: f64,
    pub gamma: f64,
    pub omega: f64,
    pub length: f64,
    pub final_time: f64,
    pub cells: usize,
    pub steps: usize,
    pub it_acc: f64,
    pub max_step: usize,
    pub problem: String,
    pub sweep_axis: SweepAxis,
    pub sweep_levels: Vec<usize>,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alpha: 0.5,
            rho: 0.8,
            gamma: 0.5,
            omega: -0.5,
            length: 1.0,
            final_time: 1.0,
            cells: 64,
            steps: 64,
            it_acc: 1e-8,
            max_step: 500,
            problem: "example1".into(),
            sweep_axis: SweepAxis::Time,
            sweep_levels: vec![8, 16, 32, 64],
            output_path: None,
            output_format: OutputFormat::Table,
        }
    }
}

/// Optional command-line overrides; every field mirrors one file key.
#[derive(clap::Args, Debug, Default, Clone)]
pub struct Overrides {
    /// Fractional order alpha in (0, 1).
    #[arg(long, allow_negative_numbers = true)]
    pub alpha: Option<f64>,
    /// Kernel parameter rho > 0.
    #[arg(long, allow_negative_numbers = true)]
    pub rho: Option<f64>,
    /// Kernel parameter gamma.
    #[arg(long, allow_negative_numbers = true)]
    pub gamma: Option<f64>,
    /// Kernel parameter omega.
    #[arg(long, allow_negative_numbers = true)]
    pub omega: Option<f64>,
    /// Domain length L > 0.
    #[arg(long = "L", allow_negative_numbers = true)]
    pub length: Option<f64>,
    /// Final time T > 0.
    #[arg(long = "T", allow_negative_numbers = true)]
    pub final_time: Option<f64>,
    /// Number of space cells M >= 3.
    #[arg(long = "M")]
    pub cells: Option<usize>,
    /// Number of time steps N >= 1.
    #[arg(long = "N")]
    pub steps: Option<usize>,
    /// Newton stopping tolerance (max-norm correction).
    #[arg(long)]
    pub itacc: Option<f64>,
    /// Newton iteration budget per time level.
    #[arg(long)]
    pub maxstep: Option<usize>,
    /// Problem label: example1, example2, nonzero-initial, `power:<nu>:<g-id>`.
    #[arg(long)]
    pub problem: Option<String>,
    /// Sweep axis: time or space.
    #[arg(long = "sweep-axis")]
    pub sweep_axis: Option<String>,
    /// Comma-separated refinement levels, e.g. 8,16,32,64.
    #[arg(long = "sweep-levels")]
    pub sweep_levels: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long = "output-path")]
    pub output_path: Option<PathBuf>,
    /// Output format: table or csv.
    #[arg(long = "output-format")]
    pub output_format: Option<String>,
}

fn parse_f64(key: &str, raw: &str) -> Result<f64> {
    raw.trim().parse().map_err(|_| Error::InvalidConfig {
        key: key.into(),
        detail: format!("`{raw}` is not a number"),
    })
}

fn parse_usize(key: &str, raw: &str) -> Result<usize> {
    raw.trim().parse().map_err(|_| Error::InvalidConfig {
        key: key.into(),
        detail: format!("`{raw}` is not a nonnegative integer"),
    })
}

pub fn parse_levels(key: &str, raw: &str) -> Result<Vec<usize>> {
    raw.split(',')
        .map(|part| parse_usize(key, part))
        .collect::<Result<Vec<_>>>()
        .and_then(|levels| {
            if levels.is_empty() {
                Err(Error::InvalidConfig {
                    key: key.into(),
                    detail: "at least one level is required".into(),
                })
            } else {
                Ok(levels)
            }
        })
}

impl RunConfig {
    /// Apply one `key=value` pair.
    fn set(&mut self, key: &str, raw: &str) -> Result<()> {
        let raw = raw.trim();
        match key {
            "alpha" => self.alpha = parse_f64(key, raw)?,
            "rho" => self.rho = parse_f64(key, raw)?,
            "gamma" => self.gamma = parse_f64(key, raw)?,
            "omega" => self.omega = parse_f64(key, raw)?,
            "L" => self.length = parse_f64(key, raw)?,
            "T" => self.final_time = parse_f64(key, raw)?,
            "M" => self.cells = parse_usize(key, raw)?,
            "N" => self.steps = parse_usize(key, raw)?,
            "itacc" => self.it_acc = parse_f64(key, raw)?,
            "maxstep" => self.max_step = parse_usize(key, raw)?,
            "problem" => self.problem = raw.to_string(),
            "sweep.axis" => self.sweep_axis = SweepAxis::parse(raw)?,
            "sweep.levels" => self.sweep_levels = parse_levels(key, raw)?,
            "output.path" => self.output_path = Some(PathBuf::from(raw)),
            "output.format" => self.output_format = OutputFormat::parse(raw)?,
            unknown => {
                return Err(Error::InvalidConfig {
                    key: unknown.into(),
                    detail: "unknown configuration key".into(),
                })
            }
        }
        Ok(())
    }

    /// Merge a configuration file into this config. Lines are `key=value`;
    /// blank lines and `#` comments are skipped; later entries win.
    fn apply_file(&mut self, path: &Path) -> Result<()> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidConfig {
            key: "config".into(),
            detail: format!("cannot read `{}`: {e}", path.display()),
        })?;
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::InvalidConfig {
                key: format!("{}:{}", path.display(), idx + 1),
                detail: format!("expected key=value, got `{line}`"),
            })?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    fn apply_overrides(&mut self, o: &Overrides) -> Result<()> {
        if let Some(v) = o.alpha {
            self.alpha = v;
        }
        if let Some(v) = o.rho {
            self.rho = v;
        }
        if let Some(v) = o.gamma {
            self.gamma = v;
        }
        if let Some(v) = o.omega {
            self.omega = v;
        }
        if let Some(v) = o.length {
            self.length = v;
        }
        if let Some(v) = o.final_time {
            self.final_time = v;
        }
        if let Some(v) = o.cells {
            self.cells = v;
        }
        if let Some(v) = o.steps {
            self.steps = v;
        }
        if let Some(v) = o.itacc {
            self.it_acc = v;
        }
        if let Some(v) = o.maxstep {
            self.max_step = v;
        }
        if let Some(v) = &o.problem {
            self.problem = v.clone();
        }
        if let Some(v) = &o.sweep_axis {
            self.sweep_axis = SweepAxis::parse(v)?;
        }
        if let Some(v) = &o.sweep_levels {
            self.sweep_levels = parse_levels("sweep.levels", v)?;
        }
        if let Some(v) = &o.output_path {
            self.output_path = Some(v.clone());
        }
        if let Some(v) = &o.output_format {
            self.output_format = OutputFormat::parse(v)?;
        }
        Ok(())
    }

    /// Defaults, then the file (if any), then the flags.
    pub fn resolve(file: Option<&Path>, overrides: &Overrides) -> Result<RunConfig> {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            cfg.apply_file(path)?;
        }
        cfg.apply_overrides(overrides)?;
        Ok(cfg)
    }
}
