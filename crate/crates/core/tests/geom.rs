mod common;

use std::f64::consts::PI;

use bmhull::geom::{
    convex_hull, convex_hull_filtered, perimeter, rotate_points, rotated_hull_perimeter,
    support_value, AngleSet, Point2,
};
use proptest::prelude::*;

fn point() -> impl Strategy<Value = Point2> {
    (-100.0..100.0f64, -100.0..100.0f64).prop_map(|(x, y)| Point2::new(x, y))
}

fn cloud() -> impl Strategy<Value = Vec<Point2>> {
    prop::collection::vec(point(), 1..60)
}

fn angle_set() -> impl Strategy<Value = AngleSet> {
    prop_oneof![
        prop::collection::vec(0.0..360.0f64, 1..5)
            .prop_filter_map("distinct angles", |d| AngleSet::from_degrees(d).ok()),
        Just(AngleSet::FullCircle),
    ]
}

#[test]
fn hull_matches_extreme_point_oracle() {
    let mut rng = common::rng(2024);
    for _ in 0..300 {
        let pts = common::grid_points(&mut rng, 25, 9);
        let hull = convex_hull(&pts).unwrap();
        assert_eq!(
            common::sorted(hull.vertices().to_vec()),
            common::sorted(common::brute_force_extreme_points(&pts))
        );
    }
}

#[test]
fn cauchy_formula_on_random_polygons() {
    let mut rng = common::rng(99);
    for _ in 0..20 {
        let poly = common::random_convex_polygon(&mut rng, 30);
        let exact = perimeter(&poly);
        let cauchy = common::cauchy_perimeter(&poly, 4096);
        assert!(
            (cauchy - exact).abs() <= 1e-6 * exact,
            "{cauchy} vs {exact}"
        );
    }
}

proptest! {
    #[test]
    fn hull_is_idempotent(pts in cloud()) {
        let h = convex_hull(&pts).unwrap();
        prop_assert_eq!(convex_hull(h.vertices()).unwrap(), h);
    }

    #[test]
    fn filtered_hull_is_identical(pts in cloud()) {
        prop_assert_eq!(convex_hull_filtered(&pts).unwrap(), convex_hull(&pts).unwrap());
    }

    #[test]
    fn hull_is_ccw_and_convex(pts in cloud()) {
        let h = convex_hull(&pts).unwrap();
        let v = h.vertices();
        if v.len() >= 3 {
            prop_assert!(h.doubled_signed_area() > 0.0);
            for i in 0..v.len() {
                let turn = bmhull::geom::cross(&v[i], &v[(i + 1) % v.len()], &v[(i + 2) % v.len()]);
                prop_assert!(turn > 0.0);
            }
        }
    }

    #[test]
    fn support_is_hull_invariant(pts in cloud(), theta in 0.0..(2.0 * PI)) {
        let h = convex_hull(&pts).unwrap();
        prop_assert_eq!(support_value(&pts, theta).unwrap(), support_value(h.vertices(), theta).unwrap());
    }

    #[test]
    fn adding_a_point_never_shrinks(pts in cloud(), extra in point(), omega in angle_set()) {
        let before = rotated_hull_perimeter(&pts, &omega).unwrap();
        let mut more = pts.clone();
        more.push(extra);
        let after = rotated_hull_perimeter(&more, &omega).unwrap();
        prop_assert!(after >= before * (1.0 - 1e-12));
    }

    #[test]
    fn rotating_the_path_is_harmless(pts in cloud(), phi in 0.0..(2.0 * PI), omega in angle_set()) {
        let base = rotated_hull_perimeter(&pts, &omega).unwrap();
        let turned = rotated_hull_perimeter(&rotate_points(&pts, phi), &omega).unwrap();
        prop_assert!((base - turned).abs() <= 1e-9 * base.max(1.0));
        // Rotating the path by φ is the same as shifting every angle by φ.
        let shifted = rotated_hull_perimeter(&pts, &omega.shifted(phi).unwrap()).unwrap();
        prop_assert!((turned - shifted).abs() <= 1e-9 * base.max(1.0));
    }

    #[test]
    fn rotation_round_trip(p in point(), w in -10.0..10.0f64) {
        let back = rotate_points(&rotate_points(&[p], w), -w)[0];
        prop_assert!(p.distance(&back) < 1e-12);
    }

    #[test]
    fn full_circle_bounds_finite_sets(pts in cloud(), omega in angle_set()) {
        let full = rotated_hull_perimeter(&pts, &AngleSet::FullCircle).unwrap();
        let part = rotated_hull_perimeter(&pts, &omega).unwrap();
        prop_assert!(part <= full * (1.0 + 1e-12));
    }
}
