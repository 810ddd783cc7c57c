//! Exit-time laws of planar Brownian motion started at the origin from the
//! sets `P_Ω` bounded by lines tangent to the unit circle: Laplace
//! transforms `E[exp(-λ²T/2)]`, survival functions, densities and moments.
//!
//! The triangle and Bessel-3 laws carry two series each: an exponential
//! (spectral) series that converges fast for large times, and a Gaussian
//! (image) series that converges fast for small times. They are related by
//! the theta functional equation; each public entry point picks the faster
//! one at the time where both decay at the same rate.

use std::f64::consts::{FRAC_2_PI, PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quad::{self, Quadrature};
use crate::series::sum_until_small;
use crate::specfn::{self, bessel_i0_scaled, dirichlet_l_chi3, gamma_real};

/// Scale `a` at which the Bessel-3 hitting time of `3a` from `a` has the law
/// of the exit time of the unit-side triangle from its centre.
pub fn triangle_unit_scale() -> f64 {
    1.0 / (4.0 * 3f64.sqrt())
}

/// Scale `a` matching the triangle tangent to the unit circle (side `2√3`).
pub const TRIANGLE_POMEGA_SCALE: f64 = 0.5;

/// Length ratio `2√3` between the tangent triangle and the unit triangle
/// squared: exit times scale by 12.
pub const TRIANGLE_TIME_RATIO: f64 = 12.0;

const SERIES_TERM_TOL: f64 = 1e-17;
const SERIES_MAX_TERMS: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExitLaw {
    /// First hitting of the line `x = 1`.
    HalfPlane,
    /// Exit from the strip `|x| ≤ 1`.
    Strip,
    /// Exit from the cone of angle π/3 whose sides are tangent to the unit
    /// circle.
    Cone60,
    /// Exit from the equilateral triangle of side 1, started at its centre.
    TriangleUnit,
    /// Exit from the equilateral triangle circumscribing the unit circle.
    TrianglePOmega,
    /// First hitting of `3a` by a 3-dimensional Bessel process started at `a`.
    Bessel3Hitting(f64),
    /// Exit from the unit disk.
    Disk,
}

impl ExitLaw {
    pub fn validate(&self) -> Result<()> {
        if let ExitLaw::Bessel3Hitting(a) = self {
            if !(*a > 0.0 && a.is_finite()) {
                return Err(Error::domain(
                    "ExitLaw",
                    format!("Bessel-3 scale a = {a} must be finite and > 0"),
                ));
            }
        }
        Ok(())
    }

    pub fn has_laplace_transform(&self) -> bool {
        !matches!(self, ExitLaw::Cone60)
    }

    pub fn has_survival(&self) -> bool {
        !matches!(self, ExitLaw::Disk)
    }

    fn unsupported(&self, operation: &'static str) -> Error {
        Error::UnsupportedLaw {
            law: self.to_string(),
            operation,
        }
    }
}

impl fmt::Display for ExitLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExitLaw::HalfPlane => write!(f, "halfplane"),
            ExitLaw::Strip => write!(f, "strip"),
            ExitLaw::Cone60 => write!(f, "cone60"),
            ExitLaw::TriangleUnit => write!(f, "triangle-unit"),
            ExitLaw::TrianglePOmega => write!(f, "triangle-pomega"),
            ExitLaw::Bessel3Hitting(a) => write!(f, "bessel3={a}"),
            ExitLaw::Disk => write!(f, "disk"),
        }
    }
}

pub const SHAPE_NAMES: &str =
    "halfplane, strip, cone60, triangle-unit, triangle-pomega, bessel3=<a>, disk";

impl FromStr for ExitLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let law = match s {
            "halfplane" => ExitLaw::HalfPlane,
            "strip" => ExitLaw::Strip,
            "cone60" => ExitLaw::Cone60,
            "triangle-unit" => ExitLaw::TriangleUnit,
            "triangle-pomega" => ExitLaw::TrianglePOmega,
            "disk" => ExitLaw::Disk,
            other => match other.strip_prefix("bessel3=") {
                Some(a) => ExitLaw::Bessel3Hitting(a.parse().map_err(|_| {
                    Error::domain("ExitLaw", format!("cannot parse Bessel-3 scale '{a}'"))
                })?),
                None => {
                    return Err(Error::domain(
                        "ExitLaw",
                        format!("unknown shape '{other}'; valid shapes: {SHAPE_NAMES}"),
                    ))
                }
            },
        };
        law.validate()?;
        Ok(law)
    }
}

fn check_time(function: &'static str, t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(
            function,
            format!("time t = {t} must be finite and > 0"),
        ))
    }
}

/// `3 sinh(λa) / sinh(3λa)`, written as `3x/(1 + x + x²)` with `x = e^{-2λa}`.
fn sinh_ratio(lambda: f64, a: f64) -> f64 {
    let x = (-2.0 * lambda * a).exp();
    3.0 * x / (1.0 + x + x * x)
}

/// `E[exp(-λ²T/2)]`.
pub fn laplace_transform(law: ExitLaw, lambda: f64) -> Result<f64> {
    law.validate()?;
    if lambda.is_nan() || lambda < 0.0 {
        return Err(Error::domain(
            "laplace_transform",
            format!("λ = {lambda} must be ≥ 0"),
        ));
    }
    if lambda == 0.0 && law.has_laplace_transform() {
        return Ok(1.0);
    }
    Ok(match law {
        ExitLaw::HalfPlane => (-lambda).exp(),
        ExitLaw::Strip => {
            let e = (-lambda).exp();
            2.0 * e / (1.0 + e * e)
        }
        ExitLaw::Disk => {
            if lambda.is_infinite() {
                0.0
            } else {
                (-lambda).exp() / bessel_i0_scaled(lambda)?
            }
        }
        ExitLaw::TriangleUnit => sinh_ratio(lambda, triangle_unit_scale()),
        ExitLaw::TrianglePOmega => sinh_ratio(lambda, TRIANGLE_POMEGA_SCALE),
        ExitLaw::Bessel3Hitting(a) => sinh_ratio(lambda, a),
        ExitLaw::Cone60 => return Err(law.unsupported("laplace_transform")),
    })
}

/// Sums `Σ_{n≥1} χ₃(n) f(n)` in blocks `f(3k+1) - f(3k+2)` until both
/// members of a block fall below `SERIES_TERM_TOL` times the largest term
/// seen, so tiny values keep their relative accuracy.
fn chi3_series<F: Fn(f64) -> f64>(f: F) -> Result<f64> {
    let mut scale = 0.0f64;
    sum_until_small(
        |k| {
            let n = 3.0 * k as f64;
            let (p, m) = (f(n + 1.0), f(n + 2.0));
            let big = p.abs().max(m.abs());
            scale = scale.max(big);
            if big <= SERIES_TERM_TOL * scale {
                0.0
            } else {
                p - m
            }
        },
        f64::MIN_POSITIVE,
        SERIES_MAX_TERMS,
    )
}

/// Time (relative to `a²`) at which the two Bessel-3 series decay equally:
/// `2/τ = π²τ/18`.
fn bessel3_crossover(a: f64) -> f64 {
    6.0 / PI * a * a
}

/// `Σ_{n≥1} 6anχ₃(n) e^{-2n²a²/t} / √(2πt³)`.
pub fn bessel3_density_gaussian(a: f64, t: f64) -> Result<f64> {
    check_time("bessel3_density_gaussian", t)?;
    let norm = (2.0 * PI * t * t * t).sqrt();
    let s = chi3_series(|n| 6.0 * a * n * (-2.0 * n * n * a * a / t).exp())?;
    Ok(s / norm)
}

/// `Σ_{n≥1} (3√3 πnχ₃(n) / (18a²)) e^{-π²n²t/(18a²)}`.
pub fn bessel3_density_exponential(a: f64, t: f64) -> Result<f64> {
    check_time("bessel3_density_exponential", t)?;
    let c = PI * PI / (18.0 * a * a);
    let s = chi3_series(|n| n * (-c * n * n * t).exp())?;
    Ok(3.0 * 3f64.sqrt() * PI / (18.0 * a * a) * s)
}

/// `1 - 3 Σ_{n≥1} χ₃(n) erfc(√2 na/√t)`: the Gaussian density integrated
/// term by term over `[0, t]`.
pub fn bessel3_survival_gaussian(a: f64, t: f64) -> Result<f64> {
    check_time("bessel3_survival_gaussian", t)?;
    let scale = SQRT_2 * a / t.sqrt();
    let s = chi3_series(|n| libm::erfc(scale * n))?;
    Ok((1.0 - 3.0 * s).clamp(0.0, 1.0))
}

/// `Σ_{n≥1} (3√3 χ₃(n) / (πn)) e^{-π²n²t/(18a²)}`.
pub fn bessel3_survival_exponential(a: f64, t: f64) -> Result<f64> {
    check_time("bessel3_survival_exponential", t)?;
    let c = PI * PI / (18.0 * a * a);
    let s = chi3_series(|n| (-c * n * n * t).exp() / n)?;
    Ok((3.0 * 3f64.sqrt() / PI * s).clamp(0.0, 1.0))
}

/// `P(T > t) = 3√3 Σ χ₃(n)/(πn) · e^{-8π²n²t/3}` for the unit triangle.
pub fn triangle_unit_survival_theta(t: f64) -> Result<f64> {
    check_time("triangle_unit_survival_theta", t)?;
    let c = 8.0 * PI * PI / 3.0;
    let s = chi3_series(|n| (-c * n * n * t).exp() / (PI * n))?;
    Ok((3.0 * 3f64.sqrt() * s).clamp(0.0, 1.0))
}

/// `8√3 Σ πnχ₃(n) e^{-8π²n²t/3}` for the unit triangle.
pub fn triangle_unit_density_theta(t: f64) -> Result<f64> {
    check_time("triangle_unit_density_theta", t)?;
    let c = 8.0 * PI * PI / 3.0;
    let s = chi3_series(|n| PI * n * (-c * n * n * t).exp())?;
    Ok(8.0 * 3f64.sqrt() * s)
}

/// Strip density, image form: `Σ_{j≥0} (-1)^j 2(2j+1) e^{-(2j+1)²/(2t)} / √(2πt³)`.
pub fn strip_density_gaussian(t: f64) -> Result<f64> {
    check_time("strip_density_gaussian", t)?;
    let s = sum_until_small(
        |j| {
            let m = (2 * j + 1) as f64;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * 2.0 * m * (-m * m / (2.0 * t)).exp()
        },
        SERIES_TERM_TOL,
        SERIES_MAX_TERMS,
    )?;
    Ok(s / (2.0 * PI * t * t * t).sqrt())
}

/// Strip density, spectral form: `π Σ_{n≥0} (-1)^n (n+½) e^{-(n+½)²π²t/2}`.
pub fn strip_density_theta(t: f64) -> Result<f64> {
    check_time("strip_density_theta", t)?;
    let s = sum_until_small(
        |n| {
            let m = n as f64 + 0.5;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sign * m * (-m * m * PI * PI * t / 2.0).exp()
        },
        SERIES_TERM_TOL,
        SERIES_MAX_TERMS,
    )?;
    Ok(PI * s)
}

/// Cone survival `2 erf(a) - erf(2a)` with `a = 1/√(2t)`, switching to the
/// complementary form `1 - 2 erfc(a) + erfc(2a)` for small `t`.
fn cone60_survival(t: f64) -> f64 {
    let a = 1.0 / (2.0 * t).sqrt();
    let v = if a >= 1.0 {
        1.0 - 2.0 * libm::erfc(a) + libm::erfc(2.0 * a)
    } else {
        2.0 * libm::erf(a) - libm::erf(2.0 * a)
    };
    v.clamp(0.0, 1.0)
}

/// `P(T > t)`.
pub fn survival(law: ExitLaw, t: f64) -> Result<f64> {
    law.validate()?;
    check_time("survival", t)?;
    match law {
        ExitLaw::HalfPlane => Ok(specfn::max_cdf(1.0 / t.sqrt())),
        ExitLaw::Strip => specfn::max_abs_cdf(1.0 / t.sqrt()),
        ExitLaw::Cone60 => Ok(cone60_survival(t)),
        ExitLaw::TriangleUnit => {
            if t >= bessel3_crossover(triangle_unit_scale()) {
                triangle_unit_survival_theta(t)
            } else {
                bessel3_survival_gaussian(triangle_unit_scale(), t)
            }
        }
        ExitLaw::TrianglePOmega => survival(ExitLaw::TriangleUnit, t / TRIANGLE_TIME_RATIO),
        ExitLaw::Bessel3Hitting(a) => {
            if t >= bessel3_crossover(a) {
                bessel3_survival_exponential(a, t)
            } else {
                bessel3_survival_gaussian(a, t)
            }
        }
        ExitLaw::Disk => Err(law.unsupported("survival")),
    }
}

/// Density of `T` at `t`.
pub fn density(law: ExitLaw, t: f64) -> Result<f64> {
    law.validate()?;
    check_time("density", t)?;
    match law {
        ExitLaw::HalfPlane => Ok((-0.5 / t).exp() / (2.0 * PI * t * t * t).sqrt()),
        ExitLaw::Strip => {
            if t >= 1.0 {
                strip_density_theta(t)
            } else {
                strip_density_gaussian(t)
            }
        }
        ExitLaw::TriangleUnit => {
            if t >= bessel3_crossover(triangle_unit_scale()) {
                triangle_unit_density_theta(t)
            } else {
                bessel3_density_gaussian(triangle_unit_scale(), t)
            }
        }
        ExitLaw::TrianglePOmega => {
            Ok(density(ExitLaw::TriangleUnit, t / TRIANGLE_TIME_RATIO)? / TRIANGLE_TIME_RATIO)
        }
        ExitLaw::Bessel3Hitting(a) => {
            if t >= bessel3_crossover(a) {
                bessel3_density_exponential(a, t)
            } else {
                bessel3_density_gaussian(a, t)
            }
        }
        ExitLaw::Cone60 | ExitLaw::Disk => Err(law.unsupported("density")),
    }
}

/// `∫₀^∞ E[exp(-λ²T/2)] dλ`, integrated on `[0, Λ]` where the transform has
/// dropped below `1e-16`.
pub fn laplace_integral(law: ExitLaw) -> Result<Quadrature> {
    if !law.has_laplace_transform() {
        return Err(law.unsupported("laplace_integral"));
    }
    law.validate()?;
    let f = |l: f64| laplace_transform(law, l).unwrap_or(f64::NAN);
    let cutoff = quad::decay_cutoff(f, 1.0, 1e-16);
    quad::integrate(f, 0.0, cutoff, 1e-12, 1e-13)
}

/// `E[T^{-1/2}] = ∫₀^∞ P(T < x^{-2}) dx`, from the survival function.
pub fn inv_sqrt_moment_via_survival(law: ExitLaw) -> Result<Quadrature> {
    if !law.has_survival() {
        return Err(law.unsupported("inv_sqrt_moment_via_survival"));
    }
    let f = |x: f64| {
        if x == 0.0 {
            1.0
        } else {
            1.0 - survival(law, 1.0 / (x * x)).unwrap_or(f64::NAN)
        }
    };
    let cutoff = quad::decay_cutoff(f, 1.0, 1e-17);
    quad::integrate(f, 0.0, cutoff, 1e-12, 1e-13)
}

/// `E[T^{-1/2}]`: `√(2/π) ∫₀^∞ E[exp(-λ²T/2)] dλ` when the transform is
/// known, otherwise from the survival function.
pub fn inv_sqrt_moment(law: ExitLaw) -> Result<f64> {
    law.validate()?;
    if law.has_laplace_transform() {
        Ok(FRAC_2_PI.sqrt() * laplace_integral(law)?.value)
    } else {
        Ok(inv_sqrt_moment_via_survival(law)?.value)
    }
}

/// `E[T^s]` for the unit triangle, `s > -1/2`:
/// `3^{s+3/2} 8^{-s} π^{-2s-1} Γ(s+1) L(2s+1, χ₃)`.
pub fn mellin_triangle(s: f64) -> Result<f64> {
    if !(s > -0.5 && s.is_finite()) {
        return Err(Error::domain(
            "mellin_triangle",
            format!("s = {s} must be finite and > -1/2"),
        ));
    }
    let log_prefactor = (s + 1.5) * 3f64.ln() - s * 8f64.ln() - (2.0 * s + 1.0) * PI.ln();
    Ok(log_prefactor.exp() * gamma_real(s + 1.0)? * dirichlet_l_chi3(2.0 * s + 1.0)?)
}
