//! Oracles shared by the integration tests and the acceptance runner.
#![allow(dead_code)]

use std::f64::consts::TAU;

use bmhull::exitdist::{self, ExitLaw};
use bmhull::geom::{self, ConvexPolygon, Point2};
use bmhull::quad;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// `n` distinct points of the integer grid `[0, side)²`.
pub fn grid_points(rng: &mut StdRng, n: usize, side: i32) -> Vec<Point2> {
    let mut all: Vec<Point2> = (0..side)
        .flat_map(|x| (0..side).map(move |y| Point2::new(x as f64, y as f64)))
        .collect();
    all.shuffle(rng);
    all.truncate(n);
    all
}

fn orient(a: &Point2, b: &Point2, c: &Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn on_segment(a: &Point2, b: &Point2, p: &Point2) -> bool {
    orient(a, b, p) == 0.0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

fn in_closed_triangle(a: &Point2, b: &Point2, c: &Point2, p: &Point2) -> bool {
    if orient(a, b, c) == 0.0 {
        return on_segment(a, b, p) || on_segment(b, c, p) || on_segment(a, c, p);
    }
    let (d1, d2, d3) = (orient(a, b, p), orient(b, c, p), orient(c, a, p));
    let neg = d1 < 0.0 || d2 < 0.0 || d3 < 0.0;
    let pos = d1 > 0.0 || d2 > 0.0 || d3 > 0.0;
    !(neg && pos)
}

/// Points of `pts` (assumed distinct) outside the hull of the others. By
/// Carathéodory, a point is in the hull of a planar set iff it lies in a
/// closed triangle (possibly flat) of three of its points.
pub fn brute_force_extreme_points(pts: &[Point2]) -> Vec<Point2> {
    let n = pts.len();
    let mut out = Vec::new();
    'points: for i in 0..n {
        let others: Vec<&Point2> = (0..n).filter(|&j| j != i).map(|j| &pts[j]).collect();
        let m = others.len();
        if m == 1 {
            continue;
        }
        for a in 0..m {
            for b in a + 1..m {
                if on_segment(others[a], others[b], &pts[i]) {
                    continue 'points;
                }
                for c in b + 1..m {
                    if in_closed_triangle(others[a], others[b], others[c], &pts[i]) {
                        continue 'points;
                    }
                }
            }
        }
        out.push(pts[i]);
    }
    out
}

pub fn sorted(mut v: Vec<Point2>) -> Vec<Point2> {
    v.sort_by(|p, q| p.x.total_cmp(&q.x).then(p.y.total_cmp(&q.y)));
    v
}

/// Hull of `n` random points in the disk of radius `r`, retried until it has
/// at least three vertices.
pub fn random_convex_polygon(rng: &mut StdRng, n: usize) -> ConvexPolygon {
    loop {
        let r: f64 = rng.gen_range(0.1..10.0);
        let pts: Vec<Point2> = (0..n)
            .map(|_| {
                let (rho, phi): (f64, f64) = (rng.gen::<f64>().sqrt() * r, rng.gen_range(0.0..TAU));
                Point2::new(rng.gen_range(-5.0..5.0) + rho * phi.cos(), rho * phi.sin())
            })
            .collect();
        let hull = geom::convex_hull(&pts).unwrap();
        if hull.len() >= 3 {
            return hull;
        }
    }
}

/// Trapezoid rule for `∫₀^{2π} h(θ) dθ` on `n` equispaced angles.
pub fn cauchy_perimeter(poly: &ConvexPolygon, n: usize) -> f64 {
    let h = TAU / n as f64;
    (0..n)
        .map(|k| geom::support_value(poly.vertices(), k as f64 * h).unwrap())
        .sum::<f64>()
        * h
}

pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

/// `-(S(t+h) - S(t-h)) / 2h` with `h = 1e-6 t`.
pub fn survival_derivative(law: ExitLaw, t: f64) -> f64 {
    let h = 1e-6 * t;
    -(exitdist::survival(law, t + h).unwrap() - exitdist::survival(law, t - h).unwrap()) / (2.0 * h)
}

/// `∫₀^∞ w(t) f(t) dt` where `f` is the density of `law`.
pub fn density_integral<W: Fn(f64) -> f64>(law: ExitLaw, w: W) -> f64 {
    let f = |t: f64| w(t) * exitdist::density(law, t).unwrap();
    quad::integrate_to_infinity(f, 0.0, 1e-12, 1e-12)
        .unwrap()
        .value
}

pub const DENSITY_LAWS: [ExitLaw; 6] = [
    ExitLaw::HalfPlane,
    ExitLaw::Strip,
    ExitLaw::TriangleUnit,
    ExitLaw::TrianglePOmega,
    ExitLaw::Bessel3Hitting(0.3),
    ExitLaw::Bessel3Hitting(2.0),
];

pub const SURVIVAL_LAWS: [ExitLaw; 7] = [
    ExitLaw::HalfPlane,
    ExitLaw::Strip,
    ExitLaw::Cone60,
    ExitLaw::TriangleUnit,
    ExitLaw::TrianglePOmega,
    ExitLaw::Bessel3Hitting(0.3),
    ExitLaw::Bessel3Hitting(2.0),
];
