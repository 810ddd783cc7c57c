//! The perimeter constants `ℓ_Ω = E[L(C_Ω(t))] / √(8πt)` for the eight
//! standard rotation sets, and the disk-area constant.
//!
//! Routes:
//! - closed forms for `{0}`, `{0,π}`, `{0,π/2}`, the cone and the triangle;
//! - `ℓ = ∫₀^∞ E[exp(-λ²T/2)] dλ` by quadrature when the exit law has a
//!   Laplace transform;
//! - lattice sums of `∫∫ (u²+v²)^{-3/2}` over squares for the square and
//!   three-quarter sets;
//! - `ℓ = √(π/2) E[h(0)]` where `h(0)` is a maximum of independent
//!   coordinate maxima, used as an independent check.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exitdist::{self, ExitLaw};
use crate::geom::AngleSet;
use crate::quad;
use crate::series::{alternating_sum, CompensatedSum};
use crate::specfn::{self, bessel_i0_scaled, rect_integral};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OmegaPreset {
    One,
    Two,
    Perp,
    Cone,
    ThreeQuarters,
    Triangle,
    Square,
    Circle,
}

impl OmegaPreset {
    pub const ALL: [OmegaPreset; 8] = [
        OmegaPreset::One,
        OmegaPreset::Two,
        OmegaPreset::Perp,
        OmegaPreset::Cone,
        OmegaPreset::ThreeQuarters,
        OmegaPreset::Triangle,
        OmegaPreset::Square,
        OmegaPreset::Circle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            OmegaPreset::One => "one",
            OmegaPreset::Two => "two",
            OmegaPreset::Perp => "perp",
            OmegaPreset::Cone => "cone",
            OmegaPreset::ThreeQuarters => "three-quarters",
            OmegaPreset::Triangle => "triangle",
            OmegaPreset::Square => "square",
            OmegaPreset::Circle => "circle",
        }
    }

    pub fn angle_set(&self) -> AngleSet {
        let angles: &[f64] = match self {
            OmegaPreset::One => &[0.0],
            OmegaPreset::Two => &[0.0, PI],
            OmegaPreset::Perp => &[0.0, FRAC_PI_2],
            OmegaPreset::Cone => &[0.0, 2.0 * PI / 3.0],
            OmegaPreset::ThreeQuarters => &[0.0, FRAC_PI_2, PI],
            OmegaPreset::Triangle => &[0.0, 2.0 * PI / 3.0, 4.0 * PI / 3.0],
            OmegaPreset::Square => &[0.0, FRAC_PI_2, PI, 3.0 * FRAC_PI_2],
            OmegaPreset::Circle => return AngleSet::FullCircle,
        };
        AngleSet::finite(angles.iter().copied()).expect("preset angles are valid")
    }

    /// Exit law of the set `P_Ω`, when it is one of the supported laws.
    pub fn exit_law(&self) -> Option<ExitLaw> {
        match self {
            OmegaPreset::One => Some(ExitLaw::HalfPlane),
            OmegaPreset::Two => Some(ExitLaw::Strip),
            OmegaPreset::Cone => Some(ExitLaw::Cone60),
            OmegaPreset::Triangle => Some(ExitLaw::TrianglePOmega),
            OmegaPreset::Circle => Some(ExitLaw::Disk),
            _ => None,
        }
    }
}

impl fmt::Display for OmegaPreset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const PRESET_NAMES: &str = "one, two, perp, cone, three-quarters, triangle, square, circle";

impl FromStr for OmegaPreset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OmegaPreset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| {
                Error::domain(
                    "OmegaPreset",
                    format!("unknown preset '{s}'; valid presets: {PRESET_NAMES}"),
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    ClosedForm,
    Quadrature,
    LatticeSum,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::ClosedForm => "closed_form",
            Route::Quadrature => "quadrature",
            Route::LatticeSum => "lattice_sum",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllValue {
    pub value: f64,
    pub route: Route,
    pub est_abs_error: f64,
}

impl EllValue {
    fn exact(value: f64) -> Self {
        EllValue {
            value,
            route: Route::ClosedForm,
            est_abs_error: 0.0,
        }
    }
}

const LATTICE_TOL: f64 = 1e-15;

pub fn analytic_ell(preset: OmegaPreset) -> Result<EllValue> {
    Ok(match preset {
        OmegaPreset::One => EllValue::exact(1.0),
        OmegaPreset::Two => EllValue::exact(FRAC_PI_2),
        OmegaPreset::Perp => EllValue::exact(SQRT_2),
        OmegaPreset::Cone => EllValue::exact(1.5),
        OmegaPreset::Triangle => EllValue::exact(PI / 3f64.sqrt()),
        // ℓ = π/2 + 1 - J with J = Σ_n ∫_1^∞ ∫_{4n+1}^{4n+3} (u²+v²)^{-3/2}.
        // The strip [0,∞) part of J is Σ (1/(4n+1) - 1/(4n+3)) = π/2 and the
        // [0,1] part is S₀/2, so J = π/2 - S₀/2.
        OmegaPreset::ThreeQuarters => {
            let s0 = series_s0()?;
            EllValue {
                value: 1.0 + s0.value / 2.0,
                route: Route::LatticeSum,
                est_abs_error: s0.est_abs_error / 2.0 + 4.0 * f64::EPSILON,
            }
        }
        OmegaPreset::Square => {
            let (s0, s1) = (series_s0()?, series_s1()?);
            EllValue {
                value: s0.value + s1.value,
                route: Route::LatticeSum,
                est_abs_error: s0.est_abs_error + s1.est_abs_error,
            }
        }
        OmegaPreset::Circle => ell_via_laplace(ExitLaw::Disk)?,
    })
}

/// `ℓ = ∫₀^∞ E[exp(-λ²T/2)] dλ`.
pub fn ell_via_laplace(law: ExitLaw) -> Result<EllValue> {
    let q = exitdist::laplace_integral(law)?;
    Ok(EllValue {
        value: q.value,
        route: Route::Quadrature,
        est_abs_error: q.abs_error,
    })
}

/// `ℓ = √(π/2) ∫₀^∞ P(h(0) > z) dz`, where `h(0)` is the largest of
/// independent one-sided (`H`) and two-sided (`L`) maxima of the coordinate
/// processes. Available for the presets built from right angles.
pub fn ell_via_coordinate_maxima(preset: OmegaPreset) -> Result<EllValue> {
    let (one_sided, two_sided) = match preset {
        OmegaPreset::One => (1, 0),
        OmegaPreset::Two => (0, 1),
        OmegaPreset::Perp => (2, 0),
        OmegaPreset::ThreeQuarters => (1, 1),
        OmegaPreset::Square => (0, 2),
        _ => {
            return Err(Error::domain(
                "ell_via_coordinate_maxima",
                format!("preset '{preset}' does not decompose into independent coordinate maxima"),
            ))
        }
    };
    let tail = |z: f64| -> f64 {
        if z == 0.0 {
            return 1.0;
        }
        let h = specfn::max_cdf(z);
        let l = specfn::max_abs_cdf(z).unwrap_or(f64::NAN);
        1.0 - h.powi(one_sided) * l.powi(two_sided)
    };
    let cutoff = quad::decay_cutoff(tail, 1.0, 1e-18);
    let q = quad::integrate(tail, 0.0, cutoff, 1e-13, 1e-13)?;
    let scale = FRAC_PI_2.sqrt();
    Ok(EllValue {
        value: scale * q.value,
        route: Route::Quadrature,
        est_abs_error: scale * q.abs_error,
    })
}

/// `I(k, n)`: the integral of `(u²+v²)^{-3/2}` over `[4k-1, 4k+1] × [4n+1, 4n+3]`.
pub fn lattice_i(k: i64, n: i64) -> f64 {
    let (k, n) = (k as f64, n as f64);
    rect_integral(4.0 * k - 1.0, 4.0 * k + 1.0, 4.0 * n + 1.0, 4.0 * n + 3.0)
        .expect("lattice squares never contain the origin")
}

/// `Σ_{|k|,|n| ≤ radius} I(k, n)`, a lower bound for `ℓ_Square`.
pub fn lattice_partial_sum(radius: i64) -> f64 {
    let mut acc = CompensatedSum::new();
    for k in -radius..=radius {
        for n in -radius..=radius {
            acc.add(lattice_i(k, n));
        }
    }
    acc.value()
}

/// `h_c(v) = g(c, v) - 1/c = c / (v (√(c²+v²) + v))`, positive and decreasing
/// in `v`; `∫_{v1}^{v2} ∫_0^c (x²+y²)^{-3/2} dx dy = h_c(v1) - h_c(v2)`.
fn h(c: f64, v: f64) -> f64 {
    c / (v * (c.hypot(v) + v))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    pub est_abs_error: f64,
}

/// `S₀ = Σ_n I(0, n) = 4 Σ_{m≥0} (-1)^m (√(1 + 1/(2m+1)²) - 1)`.
pub fn series_s0() -> Result<SeriesValue> {
    let s = alternating_sum(|m| h(1.0, (2 * m + 1) as f64), LATTICE_TOL)?;
    Ok(SeriesValue {
        value: 4.0 * s.value,
        est_abs_error: 4.0 * s.abs_error,
    })
}

/// Columns summed exactly before the asymptotic tail takes over in `S₁`.
const S1_COLUMNS: u32 = 12;

/// `S₁ = 4 Σ_{k≥1} Σ_{n≥0} I(k, n)`.
///
/// Column `k` sums to `A(4k+1) - A(4k-1)` with `A(c) = Σ_m (-1)^m h_c(2m+1)`.
/// Since `h_c(v) = √(1+v²/c²)/v - 1/c` expands in odd powers of `v` beyond
/// the `1/v` term, and `Σ (-1)^m (2m+1)^{2j-1}` vanishes for `j ≥ 1`,
/// `A(c) = π/4 - 1/(2c) + O(e^{-πc/2})`. Columns `k ≥ K` therefore add up to
/// `½ Σ_{k≥K} (1/(4k-1) - 1/(4k+1))`, which telescopes against
/// `Σ_{k≥1} (1/(4k-1) - 1/(4k+1)) = 1 - π/4`.
pub fn series_s1() -> Result<SeriesValue> {
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    let mut head = CompensatedSum::new();
    for k in 1..S1_COLUMNS {
        let (lo, hi) = ((4 * k - 1) as f64, (4 * k + 1) as f64);
        let col = alternating_sum(
            |m| h(hi, (2 * m + 1) as f64) - h(lo, (2 * m + 1) as f64),
            LATTICE_TOL,
        )?;
        acc.add(col.value);
        err += col.abs_error;
        head.add(1.0 / lo - 1.0 / hi);
    }
    let tail = 0.5 * ((1.0 - FRAC_PI_4) - head.value());
    acc.add(tail);
    let c = (4 * S1_COLUMNS - 1) as f64;
    let tail_bound = (-FRAC_PI_2 * c).exp();
    Ok(SeriesValue {
        value: 4.0 * acc.value(),
        est_abs_error: 4.0 * (err + tail_bound) + 16.0 * f64::EPSILON,
    })
}

/// `∫₀^∞ ds / I₀(√(2s)) = ∫₀^∞ λ dλ / I₀(λ)`: the mean area of the hull of
/// the full rotation set is `πt` times this.
pub fn disk_area_constant() -> Result<SeriesValue> {
    let f = |l: f64| l * (-l).exp() / bessel_i0_scaled(l).unwrap_or(f64::NAN);
    let cutoff = quad::decay_cutoff(f, 1.0, 1e-17);
    let q = quad::integrate(f, 0.0, cutoff, 1e-13, 1e-13)?;
    Ok(SeriesValue {
        value: q.value,
        est_abs_error: q.abs_error,
    })
}

/// The same constant integrated in the original variable `s`.
pub fn disk_area_constant_direct() -> Result<SeriesValue> {
    let f = |s: f64| {
        let l = (2.0 * s).sqrt();
        (-l).exp() / bessel_i0_scaled(l).unwrap_or(f64::NAN)
    };
    let cutoff = quad::decay_cutoff(f, 1.0, 1e-18);
    let q = quad::integrate(f, 0.0, cutoff, 1e-12, 1e-13)?;
    Ok(SeriesValue {
        value: q.value,
        est_abs_error: q.abs_error,
    })
}

/// `E[A(C₁(t))] / t` for the hull of a single path (no rotations).
pub const MEAN_HULL_AREA_PER_TIME: f64 = FRAC_PI_2;
