// Copyright 2026 the Scriptsmith Authors
// SPDX-License-Identifier: Apache-2.0

mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use proptest::prelude::*;
use scriptsmith::geometry::{
    arc_length, flatten, normalize_to_unit_box, turning_angles, BezierPath, CubicSegment, Point, Polyline,
};

const KAPPA: f64 = 0.552_284_749_8;

fn quarter() -> BezierPath {
    BezierPath::new(vec![CubicSegment::new(
        Point::new(0.0, 0.0),
        Point::new(0.0, KAPPA),
        Point::new(1.0 - KAPPA, 1.0),
        Point::new(1.0, 1.0),
    )])
    .unwrap()
}

#[test]
fn quarter_circle_length_matches_integration() {
    let oracle = common::cubic_length([(0.0, 0.0), (0.0, KAPPA), (1.0 - KAPPA, 1.0), (1.0, 1.0)], 200_000);
    assert!((oracle - FRAC_PI_2).abs() < 1e-3);
    for spc in [32, 64, 256] {
        let l = arc_length(&flatten(&quarter(), spc).unwrap());
        assert!((l - oracle).abs() < 1e-3, "{spc}: {l} vs {oracle}");
        assert!(l <= oracle + 1e-12, "chords never exceed the curve");
    }
}

#[test]
fn refinement_converges() {
    let oracle = common::cubic_length([(0.0, 0.0), (0.0, KAPPA), (1.0 - KAPPA, 1.0), (1.0, 1.0)], 200_000);
    let coarse = (arc_length(&flatten(&quarter(), 8).unwrap()) - oracle).abs();
    let fine = (arc_length(&flatten(&quarter(), 64).unwrap()) - oracle).abs();
    assert!(fine < coarse / 10.0);
}

#[test]
fn quarter_circle_turns_a_right_angle() {
    // Chord headings are sampled between vertices, so each end loses about
    // half a step of turning.
    let mut last = 0.0;
    for spc in [16, 64, 256, 1024] {
        let total: f64 = turning_angles(&flatten(&quarter(), spc).unwrap()).iter().sum();
        assert!(total < FRAC_PI_2 && total > last, "{spc}: {total}");
        assert!(FRAC_PI_2 - total < 2.0 / spc as f64, "{spc}: {total}");
        last = total;
    }
}

#[test]
fn regular_polygons_turn_once() {
    for n in 3..12 {
        let pts: Vec<Point> = (0..=n)
            .map(|i| {
                let a = (i % n) as f64 * 2.0 * PI / n as f64;
                Point::new(a.cos(), a.sin())
            })
            .collect();
        let angles = turning_angles(&Polyline::new(pts).unwrap());
        assert_eq!(angles.len(), n);
        assert!((angles.iter().sum::<f64>() - 2.0 * PI).abs() < 1e-9);
    }
}

#[test]
fn open_zigzag() {
    let pts = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (2.0, 1.0)].map(|(x, y)| Point::new(x, y));
    let angles = turning_angles(&Polyline::new(pts.to_vec()).unwrap());
    assert_eq!(angles.len(), 2);
    for a in angles {
        assert!((a - FRAC_PI_2).abs() < 1e-12);
    }
}

fn coord() -> impl Strategy<Value = f64> {
    -5.0..5.0f64
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

fn path() -> impl Strategy<Value = BezierPath> {
    (point(), prop::collection::vec((point(), point(), point()), 1..5)).prop_map(|(start, rest)| {
        let mut prev = start;
        let segs = rest
            .into_iter()
            .map(|(a, b, c)| {
                let s = CubicSegment::new(prev, a, b, c);
                prev = c;
                s
            })
            .collect();
        BezierPath::new(segs).unwrap()
    })
}

proptest! {
    #[test]
    fn angles_lie_in_zero_pi(p in path(), spc in 2usize..40) {
        if let Ok(poly) = flatten(&p, spc) {
            for a in turning_angles(&poly) {
                prop_assert!((0.0..=PI).contains(&a));
            }
        }
    }

    #[test]
    fn length_is_at_least_the_chord(p in path()) {
        if let Ok(poly) = flatten(&p, 32) {
            prop_assert!(arc_length(&poly) + 1e-12 >= p.start().distance(p.end()));
        }
    }

    #[test]
    fn normalization_is_idempotent(p in path()) {
        if let Ok(once) = normalize_to_unit_box(&p) {
            let twice = normalize_to_unit_box(&once).unwrap();
            for (a, b) in once.points().zip(twice.points()) {
                prop_assert!(a.distance(b) < 1e-12);
            }
            let (lo, hi) = once.bounds();
            prop_assert!(lo.x >= -1e-12 && lo.y >= -1e-12 && hi.x <= 1.0 + 1e-12 && hi.y <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn length_is_translation_invariant(p in path(), d in point()) {
        if let Ok(poly) = flatten(&p, 16) {
            let moved = flatten(&p.map_points(|q| q + d), 16).unwrap();
            prop_assert!((arc_length(&poly) - arc_length(&moved)).abs() < 1e-9);
        }
    }
}
