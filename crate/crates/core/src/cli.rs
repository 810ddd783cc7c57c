//! Command-line front end.
//!
//! Every subcommand produces one table, written as CSV (header row, 17
//! significant digits) or as a JSON array of objects with the same fields.
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::constants::{analytic_ell, OmegaPreset, PRESET_NAMES};
use crate::error::{Error, Result};
use crate::exitdist::{self, ExitLaw};
use crate::geom::AngleSet;
use crate::mc::{self, Estimator, SimConfig};

pub const THREADS_ENV: &str = "BMHULL_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "bmhull",
    version,
    about = "Mean perimeters of convex hulls of rotated planar Brownian motion"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Write the table to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analytic ℓ for the eight preset rotation sets.
    Constants,
    /// Monte Carlo estimate of ℓ for one rotation set.
    Simulate(SimulateArgs),
    /// Exit-time law on a linear grid.
    Dist(DistArgs),
    /// Moments E[T^s] of the exit time of the unit triangle.
    Mellin(MellinArgs),
    /// Monte Carlo against analytic values for all presets.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Budget {
    #[arg(long, default_value_t = mc::DEFAULT_STEPS)]
    pub steps: usize,
    #[arg(long, default_value_t = mc::DEFAULT_PATHS)]
    pub paths: usize,
    #[arg(long, default_value_t = mc::DEFAULT_SEED)]
    pub seed: u64,
    /// Worker threads (default: all cores). Never changes the output.
    #[arg(long, env = THREADS_ENV)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Hull,
    Support,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Preset name or comma-separated angles in degrees.
    #[arg(long)]
    pub omega: String,
    #[command(flatten)]
    pub budget: Budget,
    #[arg(long, default_value_t = 1.0)]
    pub time: f64,
    #[arg(long, value_enum, default_value_t = Method::Hull)]
    pub method: Method,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    Survival,
    Density,
    Laplace,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    /// halfplane, strip, cone60, triangle-unit, triangle-pomega, bessel3=<a> or disk
    #[arg(long)]
    pub shape: String,
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    #[arg(long)]
    pub from: f64,
    #[arg(long)]
    pub to: f64,
    /// Grid size, endpoints included.
    #[arg(long, default_value_t = 50)]
    pub points: usize,
}

#[derive(Debug, Args)]
pub struct MellinArgs {
    /// One or more exponents, comma-separated.
    #[arg(
        long,
        required = true,
        value_delimiter = ',',
        allow_negative_numbers = true
    )]
    pub s: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub budget: Budget,
    /// Relative tolerance for each preset.
    #[arg(long, default_value_t = mc::DEFAULT_REL_TOL)]
    pub tol: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

/// A rectangular result with named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

/// `x` with 17 significant digits; positional notation unless the decimal
/// exponent is below -5 or above 16.
pub fn format_number(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-5..=16).contains(&exp) {
        return sci;
    }
    let (sign, mantissa) = mantissa
        .strip_prefix('-')
        .map_or(("", mantissa), |m| ("-", m));
    let digits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let point = exp + 1;
    let body = if point <= 0 {
        format!("0.{}{}", "0".repeat((-point) as usize), digits)
    } else if point as usize >= digits.len() {
        format!("{}{}", digits, "0".repeat(point as usize - digits.len()))
    } else {
        let (int, frac) = digits.split_at(point as usize);
        format!("{int}.{frac}")
    };
    format!("{sign}{body}")
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Num(x) => format_number(*x),
                    Cell::Int(n) => n.to_string(),
                    Cell::Bool(b) => b.to_string(),
                    Cell::Text(s) => csv_field(s),
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, c) in self.columns.iter().zip(row) {
                    let v = match c {
                        Cell::Num(x) => {
                            serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number)
                        }
                        Cell::Int(n) => Value::from(*n),
                        Cell::Bool(b) => Value::Bool(*b),
                        Cell::Text(s) => Value::String(s.clone()),
                    };
                    obj.insert((*name).to_string(), v);
                }
                Value::Object(obj)
            })
            .collect();
        let mut s =
            serde_json::to_string_pretty(&Value::Array(rows)).expect("JSON values serialise");
        s.push('\n');
        s
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

/// A rotation set given either as a preset name or as degrees.
pub fn parse_omega(s: &str) -> Result<(AngleSet, Option<OmegaPreset>)> {
    if let Ok(p) = s.parse::<OmegaPreset>() {
        return Ok((p.angle_set(), Some(p)));
    }
    let degrees: std::result::Result<Vec<f64>, _> =
        s.split(',').map(|d| d.trim().parse::<f64>()).collect();
    match degrees {
        Ok(d) => Ok((AngleSet::from_degrees(d)?, None)),
        Err(_) => Err(Error::domain(
            "omega",
            format!(
                "'{s}' is neither a preset ({PRESET_NAMES}) nor a comma-separated list of degrees"
            ),
        )),
    }
}

fn sim_config(b: &Budget, total_time: f64) -> SimConfig {
    SimConfig {
        n_steps: b.steps,
        n_paths: b.paths,
        seed: b.seed,
        total_time,
        threads: b.threads,
    }
}

fn constants_table() -> Result<Table> {
    let mut rows = Vec::new();
    for p in OmegaPreset::ALL {
        let v = analytic_ell(p)?;
        rows.push(vec![
            Cell::Text(p.name().into()),
            Cell::Num(v.value),
            Cell::Text(v.route.to_string()),
            Cell::Num(v.est_abs_error),
        ]);
    }
    Ok(Table {
        columns: vec!["preset", "value", "route", "est_abs_error"],
        rows,
    })
}

fn simulate_table(a: &SimulateArgs) -> Result<Table> {
    let (omega, preset) = parse_omega(&a.omega)?;
    let cfg = sim_config(&a.budget, a.time);
    let estimator = match a.method {
        Method::Hull => Estimator::Hull,
        Method::Support => Estimator::Support,
    };
    let e = mc::estimate_ell(&omega, estimator, &cfg)?;
    let analytic = match preset {
        Some(p) => Cell::Num(analytic_ell(p)?.value),
        None => Cell::Text(String::new()),
    };
    Ok(Table {
        columns: vec![
            "omega",
            "method",
            "mean",
            "std_error",
            "analytic",
            "n_paths",
            "n_steps",
            "total_time",
            "seed",
        ],
        rows: vec![vec![
            Cell::Text(a.omega.clone()),
            Cell::Text(e.estimator.to_string()),
            Cell::Num(e.mean),
            Cell::Num(e.std_error),
            analytic,
            Cell::Int(e.n_paths as u64),
            Cell::Int(e.n_steps as u64),
            Cell::Num(e.total_time),
            Cell::Int(cfg.seed),
        ]],
    })
}

/// `points` values spaced evenly over `[from, to]`.
pub fn linear_grid(from: f64, to: f64, points: usize) -> Result<Vec<f64>> {
    if points == 0 || !from.is_finite() || !to.is_finite() || from > to {
        return Err(Error::InvalidConfig(format!(
            "grid needs finite from ≤ to and at least one point, got [{from}, {to}] with {points}"
        )));
    }
    if points == 1 {
        return Ok(vec![from]);
    }
    let step = (to - from) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i + 1 == points {
                to
            } else {
                from + step * i as f64
            }
        })
        .collect())
}

fn dist_table(a: &DistArgs) -> Result<Table> {
    let law: ExitLaw = a.shape.parse()?;
    let grid = linear_grid(a.from, a.to, a.points)?;
    let mut rows = Vec::with_capacity(grid.len());
    for x in grid {
        let v = match a.quantity {
            Quantity::Survival => exitdist::survival(law, x)?,
            Quantity::Density => exitdist::density(law, x)?,
            Quantity::Laplace => exitdist::laplace_transform(law, x)?,
        };
        rows.push(vec![Cell::Num(x), Cell::Num(v)]);
    }
    let x_name = if a.quantity == Quantity::Laplace {
        "lambda"
    } else {
        "t"
    };
    Ok(Table {
        columns: vec![x_name, "value"],
        rows,
    })
}

fn mellin_table(a: &MellinArgs) -> Result<Table> {
    let rows =
        a.s.iter()
            .map(|&s| Ok(vec![Cell::Num(s), Cell::Num(exitdist::mellin_triangle(s)?)]))
            .collect::<Result<Vec<_>>>()?;
    Ok(Table {
        columns: vec!["s", "value"],
        rows,
    })
}

fn verify_table(a: &VerifyArgs) -> Result<(Table, bool)> {
    let report = mc::verify_all(&sim_config(&a.budget, 1.0), a.tol)?;
    let rows = report
        .rows
        .iter()
        .map(|r| {
            vec![
                Cell::Text(r.preset.name().into()),
                Cell::Num(r.analytic),
                Cell::Num(r.estimate.mean),
                Cell::Num(r.estimate.std_error),
                Cell::Num(r.rel_error),
                Cell::Bool(r.pass),
                Cell::Bool(r.bias_warning),
            ]
        })
        .collect();
    let table = Table {
        columns: vec![
            "preset",
            "analytic",
            "mean",
            "std_error",
            "rel_error",
            "pass",
            "bias_warning",
        ],
        rows,
    };
    Ok((table, report.pass))
}

fn execute(cli: &Cli, err: &mut dyn Write) -> Result<(Table, i32)> {
    Ok(match &cli.command {
        Command::Constants => (constants_table()?, EXIT_OK),
        Command::Simulate(a) => (simulate_table(a)?, EXIT_OK),
        Command::Dist(a) => (dist_table(a)?, EXIT_OK),
        Command::Mellin(a) => (mellin_table(a)?, EXIT_OK),
        Command::Verify(a) => {
            let start = Instant::now();
            let (table, pass) = verify_table(a)?;
            let passed = table
                .rows
                .iter()
                .filter(|r| r[5] == Cell::Bool(true))
                .count();
            let _ = writeln!(
                err,
                "verify: {passed}/{} presets within {} in {:.1} s",
                table.rows.len(),
                a.tol,
                start.elapsed().as_secs_f64()
            );
            (table, if pass { EXIT_OK } else { EXIT_VERIFY_FAILED })
        }
    })
}

/// Parses `args` (program name first) and runs one subcommand.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let (table, code) = match execute(&cli, err) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let text = table.render(cli.format);
    let written = match &cli.output {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(text.as_bytes())),
        None => out.write_all(text.as_bytes()),
    };
    if let Err(e) = written.and_then(|_| out.flush()) {
        let _ = writeln!(err, "error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    code
}

/// Entry point for the binary.
pub fn main_with_std() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
