//! Configuration assembly: command-line flags first, then the optional JSON
//! config file, then builtin defaults.

use std::f64::consts::PI;
use std::fs;
use std::path::PathBuf;

use anyhow::Context;
use blochband::{KroneckerPotential, TruncationParams};
use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::failure::Failure;

const PI2: f64 = PI * PI;

/// Output format for reports.
#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FormatKind {
    /// Aligned human-readable columns.
    Table,
    /// A single JSON object with a fixed field order.
    Json,
    /// Comma-separated values with a mandatory header row.
    Csv,
}

/// Flags shared by every subcommand. Unset values fall back to the config
/// file named by --config, then to the builtin defaults.
#[derive(Args, Debug)]
pub struct CommonArgs {
    /// Step value on [0, c]; negative. With --pi-units, in units of pi^2.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,

    /// Step value on (c, 1]; positive. Derived from the mean-zero identity
    /// when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,

    /// Step location; strictly between 0 and 1.
    #[arg(long)]
    pub c: Option<f64>,

    /// Read a and b, and print energies, in units of pi^2.
    #[arg(long = "pi-units")]
    pub pi_units: bool,

    /// Series depth (number of summed terms per sector).
    #[arg(long)]
    pub r: Option<u32>,

    /// Fourier window half-width of each sum.
    #[arg(long)]
    pub s: Option<u32>,

    /// Fixed-point stopping tolerance.
    #[arg(long)]
    pub tol: Option<f64>,

    /// Iteration budget per sector.
    #[arg(long = "max-iter")]
    pub max_iter: Option<u32>,

    /// Largest pair index n to compute.
    #[arg(long = "n-max")]
    pub n_max: Option<u32>,

    /// Accept the relaxed applicability conditions (no certified bounds).
    #[arg(long)]
    pub relaxed: bool,

    /// Add transfer-matrix oracle values where the report supports them.
    #[arg(long)]
    pub oracle: bool,

    /// Margin for the resonance condition in the asymptotics study.
    #[arg(long)]
    pub eps: Option<f64>,

    /// Output format.
    #[arg(long, value_enum)]
    pub format: Option<FormatKind>,

    /// Write the report to this file instead of standard output.
    #[arg(long)]
    pub output: Option<PathBuf>,

    /// JSON config file; explicit flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// On-disk configuration; every field optional, flags take precedence.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    a: Option<f64>,
    b: Option<f64>,
    c: Option<f64>,
    pi_units: Option<bool>,
    r: Option<u32>,
    s: Option<u32>,
    tol: Option<f64>,
    max_iter: Option<u32>,
    n_max: Option<u32>,
    relaxed: Option<bool>,
    oracle: Option<bool>,
    eps: Option<f64>,
    format: Option<FormatKind>,
    output: Option<PathBuf>,
}

/// Fully resolved run configuration, echoed verbatim into JSON reports.
/// Energies are stored in raw units regardless of --pi-units.
#[derive(Debug, Serialize)]
pub struct RunConfig {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub pi_units: bool,
    pub r: u32,
    pub s: u32,
    pub tol: f64,
    pub max_iter: u32,
    pub n_max: u32,
    pub relaxed: bool,
}

/// Everything a command needs to run.
pub struct Resolved {
    pub potential: KroneckerPotential,
    pub params: TruncationParams,
    pub run: RunConfig,
    pub format: FormatKind,
    pub output: Option<PathBuf>,
    pub oracle: bool,
    pub eps: f64,
}

impl Resolved {
    /// Multiplier from raw energies to display units.
    pub fn display_scale(&self) -> f64 {
        if self.run.pi_units {
            1.0 / PI2
        } else {
            1.0
        }
    }
}

fn load_file(path: &PathBuf) -> Result<FileConfig, Failure> {
    let load = || -> anyhow::Result<FileConfig> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("config file {} is unreadable", path.display()))?;
        let parsed = serde_json::from_str(&text)
            .with_context(|| format!("config file {} is invalid", path.display()))?;
        Ok(parsed)
    };
    load().map_err(|err| Failure::Config(format!("{err:#}")))
}

/// Merge flags, file, and defaults into a validated configuration.
pub fn resolve(args: &CommonArgs) -> Result<Resolved, Failure> {
    let file = match &args.config {
        Some(path) => load_file(path)?,
        None => FileConfig::default(),
    };

    let pi_units = args.pi_units || file.pi_units.unwrap_or(false);
    let relaxed = args.relaxed || file.relaxed.unwrap_or(false);
    let oracle = args.oracle || file.oracle.unwrap_or(false);

    let unit = if pi_units { PI2 } else { 1.0 };
    let a = args
        .a
        .or(file.a)
        .ok_or_else(|| Failure::Config("a must be provided (step value on [0, c])".into()))?
        * unit;
    let b = args.b.or(file.b).map(|v| v * unit);
    let c = args
        .c
        .or(file.c)
        .ok_or_else(|| Failure::Config("c must be provided (step location in (0,1))".into()))?;

    let potential = match b {
        Some(b) => KroneckerPotential::with_b(a, b, c),
        None => KroneckerPotential::new(a, c),
    }
    .map_err(|err| Failure::Config(err.to_string()))?;

    let r = args.r.or(file.r).unwrap_or(5);
    let s = args.s.or(file.s).unwrap_or(5);
    let tol = args.tol.or(file.tol).unwrap_or(1e-14);
    let max_iter = args.max_iter.or(file.max_iter).unwrap_or(40);
    let params = TruncationParams::new(r, s, tol, max_iter)
        .map_err(|err| Failure::Config(err.to_string()))?;

    let n_max = args.n_max.or(file.n_max).unwrap_or(2);
    let eps = args.eps.or(file.eps).unwrap_or(1.0);
    if eps <= 0.0 || eps.is_nan() {
        return Err(Failure::Config(format!("eps must be positive, got {eps}")));
    }

    Ok(Resolved {
        run: RunConfig {
            a: potential.a(),
            b: potential.b(),
            c: potential.c(),
            pi_units,
            r,
            s,
            tol,
            max_iter,
            n_max,
            relaxed,
        },
        potential,
        params,
        format: args.format.or(file.format).unwrap_or(FormatKind::Table),
        output: args.output.clone().or(file.output),
        oracle,
        eps,
    })
}
