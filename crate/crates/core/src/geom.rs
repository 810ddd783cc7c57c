//! Planar convex geometry: hulls, support functions, perimeters and
//! rotations.
//!
//! Perimeters follow the convention that makes `∫₀^{2π} h(θ) dθ` equal the
//! perimeter for every hull this module produces: a point has perimeter 0 and
//! a segment of length `L` has perimeter `2L`.

use std::f64::consts::TAU;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const ORIGIN: Point2 = Point2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn distance(&self, other: &Point2) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Projection onto the unit vector at angle `theta`.
    #[inline]
    pub fn project(&self, cos: f64, sin: f64) -> f64 {
        self.x * cos + self.y * sin
    }

    #[inline]
    fn rotated(&self, cos: f64, sin: f64) -> Point2 {
        Point2::new(self.x * cos - self.y * sin, self.x * sin + self.y * cos)
    }
}

/// Twice the signed area of the triangle `(o, a, b)`; positive for a
/// counterclockwise turn.
#[inline]
pub fn cross(o: &Point2, a: &Point2, b: &Point2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// A convex polygon with vertices in counterclockwise order.
///
/// Zero, one and two vertices encode the degenerate empty set, point and
/// segment.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn into_vertices(self) -> Vec<Point2> {
        self.vertices
    }

    /// Twice the signed area (shoelace).
    pub fn doubled_signed_area(&self) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        (0..n)
            .map(|i| {
                let p = self.vertices[i];
                let q = self.vertices[(i + 1) % n];
                p.x * q.y - q.x * p.y
            })
            .sum()
    }
}

/// The rotation set Ω.
#[derive(Debug, Clone, PartialEq)]
pub enum AngleSet {
    /// Sorted, distinct angles in `[0, 2π)`.
    Finite(Vec<f64>),
    FullCircle,
}

impl AngleSet {
    /// Builds a finite angle set, reducing every angle into `[0, 2π)` and
    /// sorting. Duplicates (after reduction) are rejected.
    pub fn finite(angles: impl IntoIterator<Item = f64>) -> Result<Self> {
        let mut reduced = Vec::new();
        for a in angles {
            if !a.is_finite() {
                return Err(Error::domain("AngleSet::finite", "angles must be finite"));
            }
            let mut r = a.rem_euclid(TAU);
            if r >= TAU {
                r = 0.0;
            }
            reduced.push(r);
        }
        if reduced.is_empty() {
            return Err(Error::domain(
                "AngleSet::finite",
                "angle set must be non-empty",
            ));
        }
        reduced.sort_by(f64::total_cmp);
        if reduced.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::domain(
                "AngleSet::finite",
                "angles must be distinct modulo 2π",
            ));
        }
        Ok(AngleSet::Finite(reduced))
    }

    pub fn from_degrees(degrees: impl IntoIterator<Item = f64>) -> Result<Self> {
        Self::finite(degrees.into_iter().map(f64::to_radians))
    }

    pub fn angles(&self) -> Option<&[f64]> {
        match self {
            AngleSet::Finite(a) => Some(a),
            AngleSet::FullCircle => None,
        }
    }

    /// The set `{ω + φ : ω ∈ Ω}`.
    pub fn shifted(&self, phi: f64) -> Result<Self> {
        match self {
            AngleSet::Finite(a) => Self::finite(a.iter().map(|w| w + phi)),
            AngleSet::FullCircle => Ok(AngleSet::FullCircle),
        }
    }
}

fn check_points(points: &[Point2]) -> Result<()> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::domain("convex_hull", "non-finite coordinate"));
    }
    Ok(())
}

/// Andrew's monotone chain on points already sorted lexicographically and
/// free of duplicates. Collinear points are dropped.
fn monotone_chain(sorted: &[Point2]) -> Vec<Point2> {
    let n = sorted.len();
    if n <= 1 {
        return sorted.to_vec();
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * n);
    for p in sorted {
        while hull.len() >= 2 && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(*p);
    }
    let lower_len = hull.len() + 1;
    for p in sorted.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(*p);
    }
    // The last point repeats the first.
    hull.pop();
    hull
}

fn lexicographic(a: &Point2, b: &Point2) -> std::cmp::Ordering {
    a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y))
}

fn hull_of_owned(mut pts: Vec<Point2>) -> ConvexPolygon {
    pts.sort_unstable_by(lexicographic);
    pts.dedup();
    ConvexPolygon {
        vertices: monotone_chain(&pts),
    }
}

/// Convex hull in counterclockwise order, starting from the
/// lexicographically smallest vertex.
pub fn convex_hull(points: &[Point2]) -> Result<ConvexPolygon> {
    check_points(points)?;
    Ok(hull_of_owned(points.to_vec()))
}

/// Convex hull with an Akl–Toussaint pre-filter: points strictly inside the
/// octagon of extreme points in eight directions are discarded before the
/// sort. Produces the same polygon as [`convex_hull`].
pub fn convex_hull_filtered(points: &[Point2]) -> Result<ConvexPolygon> {
    check_points(points)?;
    let octagon = extreme_octagon(points);
    if octagon.len() < 3 {
        return Ok(hull_of_owned(points.to_vec()));
    }
    let m = octagon.len();
    let survivors: Vec<Point2> = points
        .iter()
        .filter(|p| (0..m).any(|i| cross(&octagon[i], &octagon[(i + 1) % m], p) <= 0.0))
        .copied()
        .collect();
    Ok(hull_of_owned(survivors))
}

/// Extreme points for the directions at 270°, 315°, 0°, …, 225°, in that
/// (counterclockwise) order, with repeats removed.
fn extreme_octagon(points: &[Point2]) -> Vec<Point2> {
    // Scores maximised for each direction.
    let scores: [fn(&Point2) -> f64; 8] = [
        |p| -p.y,
        |p| p.x - p.y,
        |p| p.x,
        |p| p.x + p.y,
        |p| p.y,
        |p| p.y - p.x,
        |p| -p.x,
        |p| -p.x - p.y,
    ];
    let mut best = [points[0]; 8];
    let mut best_score = [0.0; 8];
    for (k, s) in scores.iter().enumerate() {
        best_score[k] = s(&points[0]);
    }
    for p in &points[1..] {
        for (k, s) in scores.iter().enumerate() {
            let v = s(p);
            if v > best_score[k] {
                best_score[k] = v;
                best[k] = *p;
            }
        }
    }
    let mut out: Vec<Point2> = Vec::with_capacity(8);
    for p in best {
        if out.last() != Some(&p) {
            out.push(p);
        }
    }
    while out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Boundary length; a segment counts both of its sides.
pub fn perimeter(poly: &ConvexPolygon) -> f64 {
    let v = poly.vertices();
    match v.len() {
        0 | 1 => 0.0,
        2 => 2.0 * v[0].distance(&v[1]),
        n => (0..n).map(|i| v[i].distance(&v[(i + 1) % n])).sum(),
    }
}

/// `max_p (p.x cos θ + p.y sin θ)`.
pub fn support_value(points: &[Point2], theta: f64) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    let (sin, cos) = theta.sin_cos();
    Ok(points
        .iter()
        .map(|p| p.project(cos, sin))
        .fold(f64::NEG_INFINITY, f64::max))
}

pub fn rotate_points(points: &[Point2], omega: f64) -> Vec<Point2> {
    let (sin, cos) = omega.sin_cos();
    points.iter().map(|p| p.rotated(cos, sin)).collect()
}

/// Perimeter of the convex hull of `⋃_{ω∈Ω} R_ω(points)`.
///
/// For a finite Ω the hull of the path is taken first and only its vertices
/// are rotated; the hull of all rotations of a set is the centred disk of
/// radius `max |p|`, so the full circle is handled in closed form.
pub fn rotated_hull_perimeter(points: &[Point2], omega: &AngleSet) -> Result<f64> {
    match omega {
        AngleSet::FullCircle => {
            check_points(points)?;
            Ok(TAU * points.iter().map(Point2::norm).fold(0.0, f64::max))
        }
        AngleSet::Finite(angles) => {
            let base = convex_hull_filtered(points)?;
            Ok(rotated_polygon_union_perimeter(&base, angles))
        }
    }
}

/// Perimeter of the hull of the rotated copies of an already-convex set.
pub fn rotated_polygon_union_perimeter(base: &ConvexPolygon, angles: &[f64]) -> f64 {
    if angles.len() == 1 {
        // Rotation preserves lengths.
        return perimeter(base);
    }
    let mut union = Vec::with_capacity(base.len() * angles.len());
    for &w in angles {
        let (sin, cos) = w.sin_cos();
        union.extend(base.vertices().iter().map(|p| p.rotated(cos, sin)));
    }
    perimeter(&hull_of_owned(union))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    fn pts(v: &[(f64, f64)]) -> Vec<Point2> {
        v.iter().map(|&(x, y)| Point2::new(x, y)).collect()
    }

    fn square() -> Vec<Point2> {
        pts(&[(1.0, 1.0), (-1.0, 1.0), (-1.0, -1.0), (1.0, -1.0)])
    }

    #[test]
    fn square_with_interior_point() {
        let mut p = square();
        p.push(Point2::ORIGIN);
        let hull = convex_hull(&p).unwrap();
        assert_eq!(hull.len(), 4);
        assert!(hull.doubled_signed_area() > 0.0);
        assert_eq!(hull.vertices()[0], Point2::new(-1.0, -1.0));
        assert_eq!(perimeter(&hull), 8.0);
    }

    #[test]
    fn collinear_points_give_segment() {
        let hull = convex_hull(&pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)])).unwrap();
        assert_eq!(hull.vertices(), &pts(&[(0.0, 0.0), (2.0, 0.0)])[..]);
        assert_eq!(perimeter(&hull), 4.0);
    }

    #[test]
    fn degenerate_hulls() {
        assert!(matches!(convex_hull(&[]), Err(Error::EmptyPointSet)));
        let single = convex_hull(&pts(&[(2.0, 3.0), (2.0, 3.0)])).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(perimeter(&single), 0.0);
        let seg = convex_hull(&pts(&[(0.0, 0.0), (1.0, 0.0)])).unwrap();
        assert_eq!(perimeter(&seg), 2.0);
        assert!(convex_hull(&pts(&[(f64::NAN, 0.0)])).is_err());
    }

    #[test]
    fn collinear_boundary_points_removed() {
        let hull = convex_hull(&pts(&[
            (0.0, 0.0),
            (1.0, 0.0),
            (2.0, 0.0),
            (2.0, 2.0),
            (0.0, 2.0),
            (0.0, 1.0),
        ]))
        .unwrap();
        assert_eq!(hull.len(), 4);
    }

    #[test]
    fn pomega_triangle_perimeter() {
        // P_Ω for Ω = {0, 2π/3, 4π/3}: vertices at distance 2 from the centre.
        let v: Vec<Point2> = (0..3)
            .map(|k| {
                let a = PI / 3.0 + 2.0 * PI * k as f64 / 3.0;
                Point2::new(2.0 * a.cos(), 2.0 * a.sin())
            })
            .collect();
        let hull = convex_hull(&v).unwrap();
        assert!((perimeter(&hull) - 6.0 * 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn support_of_square() {
        let s = square();
        assert_eq!(support_value(&s, 0.0).unwrap(), 1.0);
        assert!((support_value(&s, FRAC_PI_4).unwrap() - SQRT_2).abs() < 1e-15);
        assert!(support_value(&[], 0.0).is_err());
    }

    #[test]
    fn rotations() {
        let p = [Point2::new(1.0, 0.0)];
        let r = rotate_points(&p, FRAC_PI_2)[0];
        assert!(r.x.abs() < 1e-16 && (r.y - 1.0).abs() < 1e-16);
        let r = rotate_points(&p, PI)[0];
        assert!((r.x + 1.0).abs() < 1e-16 && r.y.abs() < 1e-15);
        let q = [Point2::new(0.3, -2.5)];
        let back = rotate_points(&rotate_points(&q, 1.234), -1.234)[0];
        assert!(back.distance(&q[0]) < 1e-12);
    }

    #[test]
    fn rotated_hull_examples() {
        let path = pts(&[(0.0, 0.0), (1.0, 0.0)]);
        let one = AngleSet::finite([0.0]).unwrap();
        let two = AngleSet::finite([0.0, PI]).unwrap();
        let perp = AngleSet::finite([0.0, FRAC_PI_2]).unwrap();
        assert_eq!(rotated_hull_perimeter(&path, &one).unwrap(), 2.0);
        assert!((rotated_hull_perimeter(&path, &two).unwrap() - 4.0).abs() < 1e-15);
        assert!((rotated_hull_perimeter(&path, &perp).unwrap() - (2.0 + SQRT_2)).abs() < 1e-15);
        let r = rotated_hull_perimeter(&pts(&[(3.0, 4.0)]), &AngleSet::FullCircle).unwrap();
        assert!((r - 10.0 * PI).abs() < 1e-13);
    }

    #[test]
    fn angle_set_validation() {
        assert!(AngleSet::finite([]).is_err());
        assert!(AngleSet::finite([0.0, TAU]).is_err());
        assert!(AngleSet::finite([f64::INFINITY]).is_err());
        let s = AngleSet::finite([3.0 * PI, 0.5]).unwrap();
        assert_eq!(s.angles().unwrap(), &[0.5, PI]);
        let d = AngleSet::from_degrees([0.0, 90.0]).unwrap();
        assert_eq!(d.angles().unwrap(), &[0.0, FRAC_PI_2]);
    }

    #[test]
    fn octagon_filter_on_grid() {
        let grid: Vec<Point2> = (0..100)
            .map(|i| Point2::new((i / 10) as f64, (i % 10) as f64))
            .collect();
        assert_eq!(
            convex_hull_filtered(&grid).unwrap(),
            convex_hull(&grid).unwrap()
        );
    }
}
