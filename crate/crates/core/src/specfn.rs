//! Special functions and integral kernels: `I₀`, the normal distribution
//! function, the law of `max |W|` on `[0, 1]`, the character `χ₃` and its
//! L-series, `Γ`, and exact rectangle integrals of `(u² + v²)^{-3/2}`.

use std::f64::consts::{FRAC_2_SQRT_PI, FRAC_PI_2, PI, SQRT_2};

use crate::error::{Error, Result};
use crate::series::{sum_until_small, CompensatedSum};

/// Truncation control for the infinite series in this module.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_terms: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs_tol: 1e-14,
            rel_tol: 1e-14,
            max_terms: 1_000_000,
        }
    }
}

impl Tolerance {
    pub fn validate(&self) -> Result<()> {
        let ok = |t: f64| t > 0.0 && t < 1.0;
        if !ok(self.abs_tol) || !ok(self.rel_tol) || self.max_terms == 0 {
            return Err(Error::InvalidConfig(format!("invalid tolerance {self:?}")));
        }
        Ok(())
    }
}

const I0_SERIES_MAX: f64 = 15.0;
const I0_MAX_ARG: f64 = 700.0;

/// Modified Bessel function `I₀(x)` for `0 ≤ x ≤ 700`.
pub fn bessel_i0(x: f64) -> Result<f64> {
    if !(0.0..=I0_MAX_ARG).contains(&x) {
        return Err(Error::domain(
            "bessel_i0",
            format!("argument {x} outside [0, 700]"),
        ));
    }
    Ok(if x <= I0_SERIES_MAX {
        i0_power_series(x)
    } else {
        x.exp() * i0_asymptotic_scaled(x)
    })
}

/// `e^{-x} I₀(x)` for any finite `x ≥ 0`; never overflows.
pub fn bessel_i0_scaled(x: f64) -> Result<f64> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::domain(
            "bessel_i0_scaled",
            format!("argument {x} must be finite and ≥ 0"),
        ));
    }
    Ok(if x <= I0_SERIES_MAX {
        (-x).exp() * i0_power_series(x)
    } else {
        i0_asymptotic_scaled(x)
    })
}

/// `Σ (x/2)^{2k} / k!²`; all terms are positive.
fn i0_power_series(x: f64) -> f64 {
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    while term > 1e-17 * sum {
        term *= q / (k * k);
        sum += term;
        k += 1.0;
    }
    sum
}

/// `e^{-x} I₀(x) ≈ (2πx)^{-1/2} Σ ((2k-1)!!)² / (k! (8x)^k)`, summed up to
/// the smallest term.
fn i0_asymptotic_scaled(x: f64) -> f64 {
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k: f64 = 1.0;
    loop {
        let ratio = (2.0 * k - 1.0).powi(2) / (8.0 * k * x);
        if ratio >= 1.0 {
            break;
        }
        term *= ratio;
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
        k += 1.0;
    }
    sum / (2.0 * PI * x).sqrt()
}

/// Standard normal distribution function Φ.
pub fn normal_cdf(z: f64) -> f64 {
    0.5 * libm::erfc(-z / SQRT_2)
}

/// Upper tail `1 - Φ(z)`, accurate far into the tail.
pub fn normal_sf(z: f64) -> f64 {
    0.5 * libm::erfc(z / SQRT_2)
}

/// `H(z) = 2Φ(z) - 1`, the law of `max_{[0,1]} W` for `z ≥ 0`.
pub fn max_cdf(z: f64) -> f64 {
    libm::erf(z / SQRT_2)
}

const MAX_ABS_CROSSOVER: f64 = 1.0;

fn positive_arg(function: &'static str, z: f64) -> Result<()> {
    if z > 0.0 && !z.is_nan() {
        Ok(())
    } else {
        Err(Error::domain(function, format!("argument {z} must be > 0")))
    }
}

/// `L(z) = P(max_{[0,1]} |W| ≤ z)`.
pub fn max_abs_cdf(z: f64) -> Result<f64> {
    positive_arg("max_abs_cdf", z)?;
    if z <= MAX_ABS_CROSSOVER {
        max_abs_cdf_theta(z)
    } else {
        Ok(1.0 - max_abs_sf_gaussian(z)?)
    }
}

/// `1 - L(z)`, evaluated without cancellation for large `z`.
pub fn max_abs_sf(z: f64) -> Result<f64> {
    positive_arg("max_abs_sf", z)?;
    if z <= MAX_ABS_CROSSOVER {
        Ok(1.0 - max_abs_cdf_theta(z)?)
    } else {
        max_abs_sf_gaussian(z)
    }
}

/// Theta form `L(z) = (4/π) Σ_{n≥0} (-1)^n/(2n+1) · exp(-(2n+1)²π²/(8z²))`;
/// converges fastest for small `z`.
pub fn max_abs_cdf_theta(z: f64) -> Result<f64> {
    positive_arg("max_abs_cdf_theta", z)?;
    let tol = Tolerance::default();
    let c = PI * PI / (8.0 * z * z);
    let s = sum_until_small(
        |n| {
            let m = (2 * n + 1) as f64;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sign / m * (-m * m * c).exp()
        },
        tol.abs_tol * 1e-3,
        tol.max_terms,
    )?;
    Ok((4.0 / PI * s).clamp(0.0, 1.0))
}

/// Gaussian-window form of `L`: `1 - L(z) = 4 Σ_{m≥0} [Q((4m+1)z) - Q((4m+3)z)]`
/// with `Q` the normal upper tail.
pub fn max_abs_cdf_gaussian(z: f64) -> Result<f64> {
    Ok(1.0 - max_abs_sf_gaussian(z)?)
}

fn max_abs_sf_gaussian(z: f64) -> Result<f64> {
    positive_arg("max_abs_cdf_gaussian", z)?;
    let tol = Tolerance::default();
    let s = sum_until_small(
        |m| {
            let m = m as f64;
            normal_sf((4.0 * m + 1.0) * z) - normal_sf((4.0 * m + 3.0) * z)
        },
        tol.abs_tol * 1e-3,
        tol.max_terms,
    )?;
    Ok((4.0 * s).clamp(0.0, 1.0))
}

/// The non-principal character modulo 3.
pub fn chi3(n: i64) -> i8 {
    match n.rem_euclid(3) {
        1 => 1,
        2 => -1,
        _ => 0,
    }
}

/// Blocks summed directly before the Euler–Maclaurin tail.
const L_DIRECT_BLOCKS: usize = 128;

// B_{2j} / (2j)! for j = 1..=6.
const BERNOULLI_OVER_FACTORIAL: [f64; 6] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
];

/// `L(s, χ₃) = Σ χ₃(n) n^{-s}` for real `s > 0`.
///
/// Summed in blocks `(3k+1)^{-s} - (3k+2)^{-s}`; the tail after
/// `L_DIRECT_BLOCKS` blocks is closed with an Euler–Maclaurin expansion,
/// which the conditionally convergent range `s ≤ 1` needs.
pub fn dirichlet_l_chi3(s: f64) -> Result<f64> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::domain(
            "dirichlet_l_chi3",
            format!("s = {s} must be finite and > 0"),
        ));
    }
    let block = |k: f64| (3.0 * k + 1.0).powf(-s) - (3.0 * k + 2.0).powf(-s);
    let mut acc = CompensatedSum::new();
    for k in 0..L_DIRECT_BLOCKS {
        acc.add(block(k as f64));
    }
    let k0 = L_DIRECT_BLOCKS as f64;
    let (a, b) = (3.0 * k0 + 1.0, 3.0 * k0 + 2.0);

    // ∫_K^∞ block(x) dx = (a^{1-s} - b^{1-s}) / (3(s-1)).
    let log_ratio = (a / b).ln();
    let one_minus_s = 1.0 - s;
    let expm1_ratio = if one_minus_s == 0.0 {
        log_ratio
    } else {
        libm::expm1(one_minus_s * log_ratio) / one_minus_s
    };
    acc.add(-b.powf(one_minus_s) * expm1_ratio / 3.0);
    acc.add(0.5 * block(k0));

    // -Σ B_{2j}/(2j)! · f^{(2j-1)}(K) with
    // d^m/dx^m (3x+c)^{-s} = (-1)^m (s)_m 3^m (3x+c)^{-s-m}.
    let mut rising = s; // (s)_m
    let mut three_pow = 3.0;
    for (j, coef) in BERNOULLI_OVER_FACTORIAL.iter().enumerate() {
        let m = 2 * j + 1;
        if j > 0 {
            rising *= (s + m as f64 - 2.0) * (s + m as f64 - 1.0);
            three_pow *= 9.0;
        }
        // (-1)^m = -1 for odd m.
        let deriv = -rising * three_pow * (a.powf(-s - m as f64) - b.powf(-s - m as f64));
        acc.add(-coef * deriv);
    }
    Ok(acc.value())
}

/// Γ(s) for real `s > 0`.
pub fn gamma_real(s: f64) -> Result<f64> {
    if s.is_nan() || s <= 0.0 || s > 171.6 {
        return Err(Error::domain(
            "gamma_real",
            format!("s = {s} outside (0, 171.6]"),
        ));
    }
    Ok(libm::tgamma(s))
}

/// `g(x, y) = √(x² + y²) / (xy)`, the mixed antiderivative (up to sign) of
/// `(x² + y²)^{-3/2}`.
pub fn g_fn(x: f64, y: f64) -> Result<f64> {
    if x == 0.0 || y == 0.0 || !x.is_finite() || !y.is_finite() {
        return Err(Error::domain(
            "g_fn",
            format!("arguments ({x}, {y}) must be finite and nonzero"),
        ));
    }
    Ok(x.hypot(y) / x / y)
}

/// `g(u, v1) - g(u, v2)` for `u ≥ 0` and `0 < v1 < v2`, with `u` and `v2`
/// allowed to be `+∞`; equals `∫_{v1}^{v2} ∫_0^u (x² + y²)^{-3/2} dx dy`.
fn g_column_difference(u: f64, v1: f64, v2: f64) -> f64 {
    if u == 0.0 {
        return 0.0;
    }
    if u.is_infinite() {
        return if v2.is_infinite() {
            1.0 / v1
        } else {
            (v2 - v1) / (v1 * v2)
        };
    }
    let q1 = (u / v1).hypot(1.0);
    if v2.is_infinite() {
        return u / (v1 * v1 * (q1 + 1.0));
    }
    let q2 = (u / v2).hypot(1.0);
    u * (v2 - v1) / (v1 * v1 * v2) * ((v2 + v1) / v2) / (q1 + q2)
}

/// Integral over `[lu, hu] × [lv, hv]` inside the closed first quadrant,
/// with at most one of `lu`, `lv` equal to zero.
fn first_quadrant_rect(lu: f64, hu: f64, lv: f64, hv: f64) -> f64 {
    let value = if lv > 0.0 {
        g_column_difference(hu, lv, hv) - g_column_difference(lu, lv, hv)
    } else {
        g_column_difference(hv, lu, hu) - g_column_difference(lv, lu, hu)
    };
    value.max(0.0)
}

/// `[a, b]` folded onto `|x|`, as one or two intervals of `[0, ∞]`.
fn fold_interval(a: f64, b: f64) -> ([(f64, f64); 2], usize) {
    if a >= 0.0 {
        ([(a, b), (0.0, 0.0)], 1)
    } else if b <= 0.0 {
        ([(-b, -a), (0.0, 0.0)], 1)
    } else {
        ([(0.0, -a), (0.0, b)], 2)
    }
}

/// `∫_a^b ∫_c^d (u² + v²)^{-3/2} dv du` for a rectangle not containing the
/// origin. `a`, `c` may be `-∞` and `b`, `d` may be `+∞`.
///
/// Uses the corner combination `g(a,d) + g(b,c) - g(a,c) - g(b,d)` (the
/// mixed antiderivative is `-g`), after folding the rectangle into the first
/// quadrant and splitting it at the axes where `g` is singular.
pub fn rect_integral(a: f64, b: f64, c: f64, d: f64) -> Result<f64> {
    if [a, b, c, d].iter().any(|x| x.is_nan()) || a >= b || c >= d {
        return Err(Error::domain(
            "rect_integral",
            format!("need a < b and c < d, got [{a}, {b}] × [{c}, {d}]"),
        ));
    }
    if a <= 0.0 && 0.0 <= b && c <= 0.0 && 0.0 <= d {
        return Err(Error::domain(
            "rect_integral",
            "rectangle contains the origin; the integral diverges",
        ));
    }
    let (us, nu) = fold_interval(a, b);
    let (vs, nv) = fold_interval(c, d);
    let mut acc = CompensatedSum::new();
    for &(lu, hu) in &us[..nu] {
        for &(lv, hv) in &vs[..nv] {
            acc.add(first_quadrant_rect(lu, hu, lv, hv));
        }
    }
    Ok(acc.value())
}

/// `E|Z| = √(2/π)` for a standard normal `Z`.
pub fn mean_abs_normal() -> f64 {
    FRAC_2_SQRT_PI / SQRT_2
}

/// `E max_{[0,1]} |W| = √(π/2)`.
pub fn mean_max_abs() -> f64 {
    FRAC_PI_2.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::SQRT_2;

    #[test]
    fn i0_values() {
        assert_eq!(bessel_i0(0.0).unwrap(), 1.0);
        assert!((bessel_i0(2.0).unwrap() / 2.279_585_302_336_067_3 - 1.0).abs() < 1e-14);
        assert!(bessel_i0(-1.0).is_err());
        assert!(bessel_i0(701.0).is_err());
        assert!(bessel_i0(700.0).unwrap().is_finite());
    }

    #[test]
    fn i0_branches_overlap_at_crossover() {
        let x = I0_SERIES_MAX;
        let series = i0_power_series(x);
        let asym = x.exp() * i0_asymptotic_scaled(x);
        assert!((series / asym - 1.0).abs() < 1e-12);
        let x = I0_SERIES_MAX + 1e-9;
        assert!((bessel_i0(x).unwrap() / i0_power_series(x) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn i0_scaled_matches_unscaled() {
        for x in [0.5, 3.0, 14.0, 16.0, 40.0, 300.0] {
            let r = bessel_i0_scaled(x).unwrap() * x.exp() / bessel_i0(x).unwrap();
            assert!((r - 1.0).abs() < 1e-13, "x = {x}");
        }
        assert!(bessel_i0_scaled(1e6).unwrap() > 0.0);
    }

    #[test]
    fn normal_values() {
        assert_eq!(normal_cdf(0.0), 0.5);
        assert!((normal_cdf(1.0) - 0.841_344_746_068_542_9).abs() < 1e-15);
        for z in [0.1, 0.7, 2.3, 5.0] {
            assert!((max_cdf(z) + max_cdf(-z)).abs() < 1e-16);
            assert!((max_cdf(z) - (2.0 * normal_cdf(z) - 1.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn max_abs_limits_and_domain() {
        assert!(max_abs_cdf(0.05).unwrap() < 1e-10);
        assert!(max_abs_cdf(8.0).unwrap() > 1.0 - 1e-10);
        assert!(max_abs_cdf(0.0).is_err());
        assert!(max_abs_cdf(-1.0).is_err());
        assert!(max_abs_cdf(f64::NAN).is_err());
    }

    #[test]
    fn max_abs_dual_series() {
        let (a, b) = (
            max_abs_cdf_theta(1.0).unwrap(),
            max_abs_cdf_gaussian(1.0).unwrap(),
        );
        assert!((a - b).abs() < 1e-12);
        for z in [0.3, 0.5, 1.0, 2.0, 4.0] {
            let (a, b) = (
                max_abs_cdf_theta(z).unwrap(),
                max_abs_cdf_gaussian(z).unwrap(),
            );
            assert!((a - b).abs() < 1e-10, "z = {z}: {a} vs {b}");
        }
    }

    #[test]
    fn chi3_values() {
        assert_eq!((chi3(1), chi3(2), chi3(3), chi3(4)), (1, -1, 0, 1));
        assert_eq!(chi3(-1), -1);
        for m in -50..=50 {
            for n in -50..=50 {
                assert_eq!(chi3(m * n), chi3(m) * chi3(n));
            }
        }
        // χ₃(n) = (2/√3) sin(2πn/3)
        for n in 0..30 {
            let s = 2.0 / 3f64.sqrt() * (2.0 * PI * n as f64 / 3.0).sin();
            assert!((s - chi3(n) as f64).abs() < 1e-12);
        }
    }

    #[test]
    fn l_function_values() {
        let l1 = dirichlet_l_chi3(1.0).unwrap();
        assert!((l1 - PI / (3.0 * 3f64.sqrt())).abs() < 1e-14);
        assert!((3.0 * 3f64.sqrt() / PI * l1 - 1.0).abs() < 1e-12);
        let l30 = dirichlet_l_chi3(30.0).unwrap();
        assert!((l30 - (1.0 - 2f64.powi(-30))).abs() < 1e-9);
        assert!(dirichlet_l_chi3(0.0).is_err());
        assert!(dirichlet_l_chi3(-1.0).is_err());
    }

    #[test]
    fn l_function_continuous_through_one() {
        let below = dirichlet_l_chi3(1.0 - 1e-9).unwrap();
        let at = dirichlet_l_chi3(1.0).unwrap();
        let above = dirichlet_l_chi3(1.0 + 1e-9).unwrap();
        assert!((below - at).abs() < 1e-9 && (above - at).abs() < 1e-9);
    }

    #[test]
    fn gamma_values() {
        assert!((gamma_real(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((gamma_real(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
        assert!((gamma_real(5.0).unwrap() - 24.0).abs() < 1e-12);
        assert!(gamma_real(0.0).is_err());
        assert!(gamma_real(-2.5).is_err());
    }

    #[test]
    fn g_values() {
        assert!((g_fn(1.0, 1.0).unwrap() - SQRT_2).abs() < 1e-15);
        assert!((g_fn(3.0, 4.0).unwrap() - 5.0 / 12.0).abs() < 1e-15);
        assert!((g_fn(-1.0, 1.0).unwrap() + SQRT_2).abs() < 1e-15);
        assert!(g_fn(0.0, 1.0).is_err());
    }

    #[test]
    fn rect_examples() {
        let inf = f64::INFINITY;
        assert!((rect_integral(1.0, inf, 1.0, inf).unwrap() - (2.0 - SQRT_2)).abs() < 1e-15);
        let r = rect_integral(1.0, 2.0, 1.0, 2.0).unwrap();
        assert!((r - (5f64.sqrt() - SQRT_2 - SQRT_2 / 2.0)).abs() < 1e-15);
        let r = rect_integral(-1.0, 1.0, 1.0, 3.0).unwrap();
        assert!((r - 2.0 * (SQRT_2 - 10f64.sqrt() / 3.0)).abs() < 1e-15);
    }

    #[test]
    fn rect_sign_is_opposite_of_literal_corner_formula() {
        let literal = |a, b, c, d| {
            g_fn(a, c).unwrap() + g_fn(b, d).unwrap() - g_fn(a, d).unwrap() - g_fn(b, c).unwrap()
        };
        let r = rect_integral(1.0, 2.0, 1.0, 2.0).unwrap();
        assert!((r + literal(1.0, 2.0, 1.0, 2.0)).abs() < 1e-15);
    }

    #[test]
    fn rect_errors() {
        assert!(rect_integral(-1.0, 1.0, -1.0, 1.0).is_err());
        assert!(rect_integral(0.0, 1.0, 0.0, 1.0).is_err());
        assert!(rect_integral(2.0, 1.0, 1.0, 2.0).is_err());
        assert!(rect_integral(1.0, 2.0, 3.0, 3.0).is_err());
        assert!(rect_integral(f64::NAN, 2.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn rect_symmetries_and_axis_touching() {
        let r = rect_integral(1.0, 3.0, 2.0, 5.0).unwrap();
        assert!((rect_integral(-3.0, -1.0, 2.0, 5.0).unwrap() - r).abs() < 1e-15);
        assert!((rect_integral(2.0, 5.0, 1.0, 3.0).unwrap() - r).abs() < 1e-15);
        let left = rect_integral(-1.0, 0.0, 1.0, 3.0).unwrap();
        let right = rect_integral(0.0, 1.0, 1.0, 3.0).unwrap();
        let whole = rect_integral(-1.0, 1.0, 1.0, 3.0).unwrap();
        assert!((left - right).abs() < 1e-15);
        assert!((left + right - whole).abs() < 1e-15);
        let inf = f64::INFINITY;
        let full_line = rect_integral(-inf, inf, 1.0, 2.0).unwrap();
        // ∫_R (u²+v²)^{-3/2} du = 2/v², so the strip gives 2(1 - 1/2) = 1.
        assert!((full_line - 1.0).abs() < 1e-15);
    }
}
