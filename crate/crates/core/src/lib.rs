//! Mean perimeter constants of convex hulls of rotated planar Brownian
//! motion, computed analytically and by Monte Carlo simulation.

pub mod bm;
pub mod cli;
pub mod constants;
pub mod error;
pub mod exitdist;
pub mod geom;
pub mod mc;
pub mod quad;
pub mod rng;
pub mod series;
pub mod specfn;

pub use error::{Error, Result};
