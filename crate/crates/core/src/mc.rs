//! Monte Carlo estimates of `ℓ_Ω` from simulated paths.
//!
//! Path `i` of a run is generated from `(seed, i)` alone and the per-path
//! values are reduced in index order, so results do not depend on the number
//! of worker threads.

use std::f64::consts::{PI, TAU};
use std::fmt;

use rayon::prelude::*;

use crate::bm::{sample_path_into, PathConfig};
use crate::constants::{analytic_ell, OmegaPreset};
use crate::error::{Error, Result};
use crate::geom::{
    convex_hull_filtered, rotated_hull_perimeter, rotated_polygon_union_perimeter, AngleSet, Point2,
};
use crate::series::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Estimator {
    /// Perimeter of the hull of the rotated copies.
    Hull,
    /// `2π h_Ω(0)` from the maximal projections.
    Support,
}

impl fmt::Display for Estimator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Estimator::Hull => "hull",
            Estimator::Support => "support",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_paths: usize,
    pub n_steps: usize,
    pub total_time: f64,
    pub estimator: Estimator,
}

/// Budget and reproducibility settings of a run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimConfig {
    pub n_steps: usize,
    pub n_paths: usize,
    pub seed: u64,
    pub total_time: f64,
    /// Worker threads; `None` uses every available core.
    pub threads: Option<usize>,
}

pub const DEFAULT_STEPS: usize = 1 << 16;
pub const DEFAULT_PATHS: usize = 20_000;
pub const DEFAULT_SEED: u64 = 7;
pub const DEFAULT_REL_TOL: f64 = 0.015;

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            n_steps: DEFAULT_STEPS,
            n_paths: DEFAULT_PATHS,
            seed: DEFAULT_SEED,
            total_time: 1.0,
            threads: None,
        }
    }
}

impl SimConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_paths < 2 {
            return Err(Error::InvalidConfig("n_paths must be at least 2".into()));
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidConfig("threads must be at least 1".into()));
        }
        self.path(0).validate()
    }

    fn path(&self, index: u64) -> PathConfig {
        PathConfig {
            n_steps: self.n_steps,
            total_time: self.total_time,
            seed: self.seed,
            path_index: index,
        }
    }

    fn normaliser(&self) -> f64 {
        (8.0 * PI * self.total_time).sqrt()
    }
}

/// Evaluates `f` on every path of the run, in path-index order.
fn map_paths<T, F>(cfg: &SimConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&[Point2]) -> Result<T> + Sync,
{
    cfg.validate()?;
    let work = || {
        (0..cfg.n_paths as u64)
            .into_par_iter()
            .map_init(Vec::new, |buf, i| {
                sample_path_into(&cfg.path(i), buf)?;
                f(buf)
            })
            .collect::<Result<Vec<T>>>()
    };
    match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("cannot start worker pool: {e}")))?
            .install(work),
        None => work(),
    }
}

fn summarise(
    values: impl Iterator<Item = f64> + Clone,
    cfg: &SimConfig,
    estimator: Estimator,
) -> Estimate {
    let n = cfg.n_paths as f64;
    let mean = values.clone().collect::<CompensatedSum>().value() / n;
    let ss = values
        .map(|v| (v - mean) * (v - mean))
        .collect::<CompensatedSum>()
        .value();
    Estimate {
        mean,
        std_error: (ss / (n - 1.0) / n).sqrt(),
        n_paths: cfg.n_paths,
        n_steps: cfg.n_steps,
        total_time: cfg.total_time,
        estimator,
    }
}

/// `L(C_Ω) / √(8πt)` for one path.
pub fn hull_contribution(points: &[Point2], omega: &AngleSet, total_time: f64) -> Result<f64> {
    Ok(rotated_hull_perimeter(points, omega)? / (8.0 * PI * total_time).sqrt())
}

/// `2π h_Ω(0) / √(8πt)` with `h_Ω(0) = max_{ω∈Ω} max_k (X_k cos ω + Y_k sin ω)`.
pub fn support_contribution(points: &[Point2], omega: &AngleSet, total_time: f64) -> Result<f64> {
    let angles = omega.angles().ok_or_else(|| {
        Error::InvalidConfig(
            "the support estimator needs a finite rotation set; use the hull estimator".into(),
        )
    })?;
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let dirs: Vec<(f64, f64)> = angles
        .iter()
        .map(|w| w.sin_cos())
        .map(|(s, c)| (c, s))
        .collect();
    let h = points
        .iter()
        .flat_map(|p| dirs.iter().map(move |&(c, s)| p.project(c, s)))
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(TAU * h / (8.0 * PI * total_time).sqrt())
}

pub fn estimate_ell_hull(omega: &AngleSet, cfg: &SimConfig) -> Result<Estimate> {
    let norm = cfg.normaliser();
    let values = map_paths(cfg, |p| Ok(rotated_hull_perimeter(p, omega)? / norm))?;
    Ok(summarise(values.iter().copied(), cfg, Estimator::Hull))
}

pub fn estimate_ell_support(omega: &AngleSet, cfg: &SimConfig) -> Result<Estimate> {
    if omega.angles().is_none() {
        return Err(Error::UnsupportedLaw {
            law: "full circle".into(),
            operation: "support estimator",
        });
    }
    let values = map_paths(cfg, |p| support_contribution(p, omega, cfg.total_time))?;
    Ok(summarise(values.iter().copied(), cfg, Estimator::Support))
}

pub fn estimate_ell(omega: &AngleSet, estimator: Estimator, cfg: &SimConfig) -> Result<Estimate> {
    match estimator {
        Estimator::Hull => estimate_ell_hull(omega, cfg),
        Estimator::Support => estimate_ell_support(omega, cfg),
    }
}

/// Hull estimates for every preset from a single set of paths: the hull of
/// each path is built once and reused for all rotation sets.
pub fn estimate_all_presets(cfg: &SimConfig) -> Result<Vec<(OmegaPreset, Estimate)>> {
    let norm = cfg.normaliser();
    let sets: Vec<AngleSet> = OmegaPreset::ALL
        .iter()
        .map(OmegaPreset::angle_set)
        .collect();
    let per_path = map_paths(cfg, |p| {
        let base = convex_hull_filtered(p)?;
        let radius = base.vertices().iter().map(Point2::norm).fold(0.0, f64::max);
        let mut row = [0.0; 8];
        for (slot, set) in row.iter_mut().zip(&sets) {
            *slot = match set {
                AngleSet::FullCircle => TAU * radius,
                AngleSet::Finite(angles) => rotated_polygon_union_perimeter(&base, angles),
            } / norm;
        }
        Ok(row)
    })?;
    Ok(OmegaPreset::ALL
        .iter()
        .enumerate()
        .map(|(j, &preset)| {
            (
                preset,
                summarise(per_path.iter().map(move |r| r[j]), cfg, Estimator::Hull),
            )
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRow {
    pub preset: OmegaPreset,
    pub analytic: f64,
    pub estimate: Estimate,
    pub rel_error: f64,
    pub pass: bool,
    /// The estimate sits more than three standard errors above the analytic
    /// value, which a discretised hull (always inside the continuous one)
    /// should not produce.
    pub bias_warning: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub rows: Vec<VerifyRow>,
    pub rel_tol: f64,
    pub pass: bool,
}

/// Compares hull estimates for the eight presets against their analytic
/// values. A preset passes when the relative error is at most `rel_tol`.
pub fn verify_all(cfg: &SimConfig, rel_tol: f64) -> Result<VerifyReport> {
    if !(rel_tol > 0.0 && rel_tol <= 0.1) {
        return Err(Error::InvalidConfig(format!(
            "rel_tol = {rel_tol} must lie in (0, 0.1]"
        )));
    }
    let estimates = estimate_all_presets(cfg)?;
    let mut rows = Vec::with_capacity(estimates.len());
    for (preset, estimate) in estimates {
        let analytic = analytic_ell(preset)?.value;
        let rel_error = (estimate.mean - analytic).abs() / analytic;
        rows.push(VerifyRow {
            preset,
            analytic,
            estimate,
            rel_error,
            pass: rel_error <= rel_tol,
            bias_warning: estimate.mean - 3.0 * estimate.std_error > analytic,
        });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(VerifyReport {
        rows,
        rel_tol,
        pass,
    })
}
