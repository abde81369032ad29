// Copyright 2026 the Scriptsmith Authors
// SPDX-License-Identifier: Apache-2.0

//! Cubic Bezier paths, their polyline approximations, and the handful of
//! measurements taken on them: arc length, turning angles and bounding-box
//! normalization.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Edges shorter than this are dropped when building a polyline.
pub const MIN_EDGE_LENGTH: f64 = 1e-12;

/// Flattening resolution used when a caller has no opinion.
pub const DEFAULT_SEGMENTS_PER_CURVE: usize = 32;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("path has no segments")]
    EmptyPath,
    #[error("segment {0} does not start where segment {prev} ends", prev = .0 - 1)]
    Discontinuous(usize),
    #[error("segments_per_curve must be at least 2, got {0}")]
    Resolution(usize),
    #[error("polyline needs at least two distinct vertices")]
    DegeneratePolyline,
    #[error("all control points coincide; nothing to normalize")]
    ZeroExtent,
    #[error("non-finite coordinate")]
    NonFinite,
}

/// A point in glyph space. Serialized as a two-element array `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        (other - self).hypot()
    }

    pub fn hypot(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn lerp(self, other: Point, t: f64) -> Point {
        self + (other - self) * t
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, rhs: f64) -> Point {
        Point::new(self.x * rhs, self.y * rhs)
    }
}

/// One cubic Bezier segment: start, two handles, end.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CubicSegment(pub [Point; 4]);

impl CubicSegment {
    pub fn new(p0: Point, p1: Point, p2: Point, p3: Point) -> Self {
        CubicSegment([p0, p1, p2, p3])
    }

    /// A straight segment whose handles sit at the thirds of the chord.
    pub fn line(from: Point, to: Point) -> Self {
        CubicSegment([from, from.lerp(to, 1.0 / 3.0), from.lerp(to, 2.0 / 3.0), to])
    }

    pub fn start(&self) -> Point {
        self.0[0]
    }

    pub fn end(&self) -> Point {
        self.0[3]
    }

    /// Bernstein-form evaluation.
    pub fn eval(&self, t: f64) -> Point {
        let [p0, p1, p2, p3] = self.0;
        let mt = 1.0 - t;
        let a = mt * mt * mt;
        let b = 3.0 * mt * mt * t;
        let c = 3.0 * mt * t * t;
        let d = t * t * t;
        Point::new(
            a * p0.x + b * p1.x + c * p2.x + d * p3.x,
            a * p0.y + b * p1.y + c * p2.y + d * p3.y,
        )
    }

    /// De Casteljau split at `t`.
    pub fn subdivide(&self, t: f64) -> (CubicSegment, CubicSegment) {
        let [p0, p1, p2, p3] = self.0;
        let p01 = p0.lerp(p1, t);
        let p12 = p1.lerp(p2, t);
        let p23 = p2.lerp(p3, t);
        let p012 = p01.lerp(p12, t);
        let p123 = p12.lerp(p23, t);
        let mid = p012.lerp(p123, t);
        (CubicSegment([p0, p01, p012, mid]), CubicSegment([mid, p123, p23, p3]))
    }

    /// Inverse of `subdivide(0.5)`: rebuilds the parent segment from its two halves.
    pub fn join_halves(left: &CubicSegment, right: &CubicSegment) -> CubicSegment {
        let [a0, a1, _, _] = left.0;
        let [_, _, b2, b3] = right.0;
        CubicSegment([a0, a1 * 2.0 - a0, b2 * 2.0 - b3, b3])
    }

    pub fn map(&self, f: impl Fn(Point) -> Point) -> CubicSegment {
        CubicSegment(self.0.map(f))
    }

    pub fn reversed(&self) -> CubicSegment {
        let [p0, p1, p2, p3] = self.0;
        CubicSegment([p3, p2, p1, p0])
    }
}

/// A chain of cubic segments sharing their junction points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BezierPath {
    segments: Vec<CubicSegment>,
}

impl BezierPath {
    /// Builds a path, rejecting empty or broken chains.
    pub fn new(segments: Vec<CubicSegment>) -> Result<Self, GeometryError> {
        let path = Self::from_segments_unchecked(segments)?;
        if let Some(k) = path.first_discontinuity() {
            return Err(GeometryError::Discontinuous(k));
        }
        if !path.points().all(Point::is_finite) {
            return Err(GeometryError::NonFinite);
        }
        Ok(path)
    }

    /// Builds a path without checking continuity. Used for data loaded from
    /// disk, which is validated separately so every problem can be reported.
    pub fn from_segments_unchecked(segments: Vec<CubicSegment>) -> Result<Self, GeometryError> {
        if segments.is_empty() {
            return Err(GeometryError::EmptyPath);
        }
        Ok(BezierPath { segments })
    }

    pub fn segments(&self) -> &[CubicSegment] {
        &self.segments
    }

    pub fn into_segments(self) -> Vec<CubicSegment> {
        self.segments
    }

    pub fn start(&self) -> Point {
        self.segments[0].start()
    }

    pub fn end(&self) -> Point {
        self.segments[self.segments.len() - 1].end()
    }

    /// Every control point, junctions repeated once per segment.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.segments.iter().flat_map(|s| s.0)
    }

    /// Index of the first segment whose start differs from its predecessor's end.
    pub fn first_discontinuity(&self) -> Option<usize> {
        self.segments
            .windows(2)
            .position(|w| w[0].end() != w[1].start())
            .map(|k| k + 1)
    }

    pub fn map_points(&self, f: impl Fn(Point) -> Point) -> BezierPath {
        BezierPath {
            segments: self.segments.iter().map(|s| s.map(&f)).collect(),
        }
    }

    /// Control-point bounding box as `(min, max)`.
    pub fn bounds(&self) -> (Point, Point) {
        let mut lo = Point::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Point::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in self.points() {
            lo = Point::new(lo.x.min(p.x), lo.y.min(p.y));
            hi = Point::new(hi.x.max(p.x), hi.y.max(p.y));
        }
        (lo, hi)
    }
}

/// Polygonal approximation of a path. Consecutive vertices are always distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct Polyline {
    vertices: Vec<Point>,
}

impl Polyline {
    /// Builds a polyline, dropping zero-length edges.
    pub fn new(points: impl IntoIterator<Item = Point>) -> Result<Self, GeometryError> {
        let mut vertices: Vec<Point> = Vec::new();
        for p in points {
            if !p.is_finite() {
                return Err(GeometryError::NonFinite);
            }
            match vertices.last() {
                Some(last) if last.distance(p) < MIN_EDGE_LENGTH => {}
                _ => vertices.push(p),
            }
        }
        if vertices.len() < 2 {
            return Err(GeometryError::DegeneratePolyline);
        }
        Ok(Polyline { vertices })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn edge_lengths(&self) -> impl Iterator<Item = f64> + '_ {
        self.vertices.windows(2).map(|w| w[0].distance(w[1]))
    }

    /// True when the last vertex returns to the first.
    pub fn is_closed(&self) -> bool {
        self.vertices.len() > 2 && self.vertices[0].distance(self.vertices[self.vertices.len() - 1]) < MIN_EDGE_LENGTH
    }
}

/// Samples each segment at `segments_per_curve + 1` uniformly spaced
/// parameters and concatenates the samples, merging shared junctions.
pub fn flatten(path: &BezierPath, segments_per_curve: usize) -> Result<Polyline, GeometryError> {
    if segments_per_curve < 2 {
        return Err(GeometryError::Resolution(segments_per_curve));
    }
    let steps = segments_per_curve as f64;
    let mut points = Vec::with_capacity(path.segments().len() * segments_per_curve + 1);
    for (k, seg) in path.segments().iter().enumerate() {
        let first = if k == 0 { 0 } else { 1 };
        for i in first..=segments_per_curve {
            let p = match i {
                0 => seg.start(),
                i if i == segments_per_curve => seg.end(),
                i => seg.eval(i as f64 / steps),
            };
            points.push(p);
        }
    }
    Polyline::new(points)
}

pub fn arc_length(poly: &Polyline) -> f64 {
    poly.edge_lengths().sum()
}

/// Heading change between two edge vectors, in `[0, π]`.
pub fn heading_change(d1: Point, d2: Point) -> f64 {
    let cross = d1.x * d2.y - d1.y * d2.x;
    let dot = d1.x * d2.x + d1.y * d2.y;
    cross.abs().atan2(dot).clamp(0.0, PI)
}

/// Absolute exterior angle at each interior vertex, in `[0, π]`.
///
/// Open polylines yield `len - 2` angles. A closed polyline (last vertex on
/// the first) also turns at the closing vertex and yields `len - 1`.
pub fn turning_angles(poly: &Polyline) -> Vec<f64> {
    let v = poly.vertices();
    if v.len() < 3 {
        return Vec::new();
    }
    let mut angles: Vec<f64> = v.windows(3).map(|w| heading_change(w[1] - w[0], w[2] - w[1])).collect();
    if poly.is_closed() {
        let n = v.len();
        angles.push(heading_change(v[n - 1] - v[n - 2], v[1] - v[0]));
    }
    angles
}

/// Uniformly scales and translates a path so its control-point bounding box
/// fits `[0,1]²`, touching both sides along the longer axis and centred on
/// the shorter one.
pub fn normalize_to_unit_box(path: &BezierPath) -> Result<BezierPath, GeometryError> {
    let (lo, hi) = path.bounds();
    if !(lo.is_finite() && hi.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    let w = hi.x - lo.x;
    let h = hi.y - lo.y;
    let extent = w.max(h);
    if extent < MIN_EDGE_LENGTH {
        return Err(GeometryError::ZeroExtent);
    }
    let scale = 1.0 / extent;
    let pad_x = (1.0 - w * scale) / 2.0;
    let pad_y = (1.0 - h * scale) / 2.0;
    Ok(path.map_points(|p| {
        Point::new(
            place(p.x, lo.x, hi.x, scale, pad_x),
            place(p.y, lo.y, hi.y, scale, pad_y),
        )
    }))
}

// Extremes are pinned exactly so that repeated normalization is a fixed point.
fn place(v: f64, lo: f64, hi: f64, scale: f64, pad: f64) -> f64 {
    if pad == 0.0 {
        if v == lo {
            return 0.0;
        }
        if v == hi {
            return 1.0;
        }
    }
    (v - lo) * scale + pad
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[(f64, f64)]) -> Polyline {
        Polyline::new(v.iter().map(|&(x, y)| Point::new(x, y))).unwrap()
    }

    #[test]
    fn straight_segment_flattens_onto_its_line() {
        let seg = CubicSegment::line(Point::new(0.0, 0.0), Point::new(1.0, 0.5));
        let path = BezierPath::new(vec![seg]).unwrap();
        let poly = flatten(&path, 8).unwrap();
        assert_eq!(poly.len(), 9);
        for p in poly.vertices() {
            assert!((p.y - 0.5 * p.x).abs() < 1e-15);
        }
    }

    #[test]
    fn two_samples_hit_the_midpoint() {
        let seg = CubicSegment::new(
            Point::new(0.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
        );
        let path = BezierPath::new(vec![seg]).unwrap();
        let poly = flatten(&path, 2).unwrap();
        assert_eq!(poly.len(), 3);
        assert_eq!(poly.vertices()[1], seg.eval(0.5));
        assert_eq!(poly.vertices()[1], Point::new(0.5, 0.75));
    }

    #[test]
    fn junctions_are_merged() {
        let a = CubicSegment::line(Point::new(0.0, 0.0), Point::new(0.5, 0.0));
        let b = CubicSegment::line(Point::new(0.5, 0.0), Point::new(0.5, 1.0));
        let path = BezierPath::new(vec![a, b]).unwrap();
        assert_eq!(flatten(&path, 4).unwrap().len(), 9);
    }

    #[test]
    fn flatten_rejects_low_resolution_and_empty_paths() {
        let path = BezierPath::new(vec![CubicSegment::line(Point::new(0.0, 0.0), Point::new(1.0, 0.0))]).unwrap();
        assert_eq!(flatten(&path, 1), Err(GeometryError::Resolution(1)));
        assert_eq!(BezierPath::new(vec![]), Err(GeometryError::EmptyPath));
    }

    #[test]
    fn broken_chain_is_rejected() {
        let a = CubicSegment::line(Point::new(0.0, 0.0), Point::new(0.5, 0.0));
        let b = CubicSegment::line(Point::new(0.6, 0.0), Point::new(1.0, 0.0));
        assert_eq!(BezierPath::new(vec![a, b]), Err(GeometryError::Discontinuous(1)));
    }

    #[test]
    fn arc_length_of_simple_polylines() {
        assert_eq!(arc_length(&pts(&[(0.0, 0.0), (0.0, 1.0)])), 1.0);
        assert_eq!(arc_length(&pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)])), 2.0);
    }

    #[test]
    fn duplicate_vertices_are_dropped() {
        let p = pts(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (1.0, 0.0)]);
        assert_eq!(p.len(), 2);
        assert!(Polyline::new([Point::new(0.3, 0.3); 4]).is_err());
    }

    #[test]
    fn turning_angles_of_simple_polylines() {
        assert_eq!(turning_angles(&pts(&[(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)])), vec![0.0]);
        let right = turning_angles(&pts(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)]));
        assert_eq!(right.len(), 1);
        assert!((right[0] - PI / 2.0).abs() < 1e-15);
        assert!(turning_angles(&pts(&[(0.0, 0.0), (1.0, 0.0)])).is_empty());
        let reversal = turning_angles(&pts(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0)]));
        assert!((reversal[0] - PI).abs() < 1e-15);
    }

    #[test]
    fn normalize_identity_and_scaling() {
        let seg = CubicSegment::new(
            Point::new(0.0, 0.0),
            Point::new(0.2, 1.0),
            Point::new(0.8, 1.0),
            Point::new(1.0, 0.0),
        );
        let unit = BezierPath::new(vec![seg]).unwrap();
        assert_eq!(normalize_to_unit_box(&unit).unwrap(), unit);

        let doubled = unit.map_points(|p| p * 2.0);
        let back = normalize_to_unit_box(&doubled).unwrap();
        for (a, b) in back.points().zip(unit.points()) {
            assert!(a.distance(b) < 1e-15);
        }
    }

    #[test]
    fn normalize_centres_the_short_axis() {
        let seg = CubicSegment::line(Point::new(2.0, 5.0), Point::new(6.0, 7.0));
        let path = BezierPath::new(vec![seg]).unwrap();
        let n = normalize_to_unit_box(&path).unwrap();
        assert_eq!(n.start(), Point::new(0.0, 0.25));
        assert_eq!(n.end(), Point::new(1.0, 0.75));
    }

    #[test]
    fn normalize_rejects_a_single_point() {
        let p = Point::new(0.4, 0.4);
        let path = BezierPath::new(vec![CubicSegment::new(p, p, p, p)]).unwrap();
        assert_eq!(normalize_to_unit_box(&path), Err(GeometryError::ZeroExtent));
    }

    #[test]
    fn subdivide_and_join_are_inverse() {
        let seg = CubicSegment::new(
            Point::new(0.0, 0.1),
            Point::new(0.3, 0.9),
            Point::new(0.7, -0.2),
            Point::new(1.0, 0.5),
        );
        let (l, r) = seg.subdivide(0.5);
        assert!(l.end().distance(seg.eval(0.5)) < 1e-15);
        let joined = CubicSegment::join_halves(&l, &r);
        for (a, b) in joined.0.iter().zip(seg.0.iter()) {
            assert!(a.distance(*b) < 1e-15);
        }
    }

    #[test]
    fn point_serializes_as_pair() {
        let json = serde_json::to_string(&Point::new(0.25, 1.0)).unwrap();
        assert_eq!(json, "[0.25,1.0]");
    }
}
