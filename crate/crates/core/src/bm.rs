//! Seeded discrete planar Brownian paths.
//!
//! Increment `k` of path `i` is the Box–Muller pair of Philox block
//! `(key = seed, counter = (i, k))`, scaled by `√(t/n)`. Paths are therefore
//! reproducible bit for bit and independent of generation order.

use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::rng::CounterRng;

/// Counter position reserved for the half-plane exit-time sampler; path
/// steps never reach it.
const HALFPLANE_POSITION: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathConfig {
    pub n_steps: usize,
    pub total_time: f64,
    pub seed: u64,
    pub path_index: u64,
}

impl PathConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_steps == 0 {
            return Err(Error::InvalidConfig("n_steps must be at least 1".into()));
        }
        if !(self.total_time > 0.0 && self.total_time.is_finite()) {
            return Err(Error::InvalidConfig(
                "total_time must be positive and finite".into(),
            ));
        }
        Ok(())
    }
}

/// Positions `B(kt/n)`, `k = 0..=n`, starting at the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct Path {
    points: Vec<Point2>,
    total_time: f64,
}

impl Path {
    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn n_steps(&self) -> usize {
        self.points.len() - 1
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    pub fn into_points(self) -> Vec<Point2> {
        self.points
    }
}

pub fn sample_path(config: &PathConfig) -> Result<Path> {
    let mut points = Vec::new();
    sample_path_into(config, &mut points)?;
    Ok(Path {
        points,
        total_time: config.total_time,
    })
}

/// Fills `buf` with the path for `config`, reusing its allocation.
pub fn sample_path_into(config: &PathConfig, buf: &mut Vec<Point2>) -> Result<()> {
    config.validate()?;
    let rng = CounterRng::new(config.seed);
    let scale = (config.total_time / config.n_steps as f64).sqrt();
    buf.clear();
    buf.reserve(config.n_steps + 1);
    let mut p = Point2::ORIGIN;
    buf.push(p);
    for k in 0..config.n_steps as u64 {
        let (g1, g2) = rng.normal_pair(config.path_index, k);
        p = Point2::new(p.x + scale * g1, p.y + scale * g2);
        buf.push(p);
    }
    Ok(())
}

/// First hitting time of level 1 by a standard linear Brownian motion, from
/// one normal deviate: `T = 1/Z²`.
pub fn halfplane_exit_from_normal(z: f64) -> f64 {
    1.0 / (z * z)
}

/// Draws the half-plane exit time for `(seed, index)`.
pub fn sample_halfplane_exit(seed: u64, index: u64) -> f64 {
    let (z, _) = CounterRng::new(seed).normal_pair(index, HALFPLANE_POSITION);
    halfplane_exit_from_normal(z)
}
