// Copyright 2026 the Scriptsmith Authors
// SPDX-License-Identifier: Apache-2.0

//! Glyphs: single-stroke Bezier paths that enter the unit box on the left
//! edge and leave it on the right, each end pinned to one of three anchor
//! heights so that glyphs can be chained into words.

use std::fmt;

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{BezierPath, CubicSegment, GeometryError, Point};
use crate::rng::rng_from_seed;

/// Upper bound on interior points regardless of configuration.
pub const HARD_MAX_INTERIOR: usize = 16;
/// Control points may overshoot the unit box by this much on every side.
pub const OVERSHOOT: f64 = 0.25;
pub const MIN_COORD: f64 = -OVERSHOOT;
pub const MAX_COORD: f64 = 1.0 + OVERSHOOT;
/// Slack allowed when comparing an endpoint with its anchor.
pub const ANCHOR_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GlyphError {
    #[error("invalid glyph config `{field}`: {message}")]
    InvalidConfig { field: &'static str, message: String },
    #[error("invalid anchor level {0}; expected 0, 1 or 2")]
    AnchorLevel(u8),
    #[error("glyph `{id}` is invalid: {report}")]
    Invalid { id: String, report: ValidationReport },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// One of the three heights a stroke may start or end at.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct AnchorLevel(u8);

impl AnchorLevel {
    pub const LOW: AnchorLevel = AnchorLevel(0);
    pub const MID: AnchorLevel = AnchorLevel(1);
    pub const HIGH: AnchorLevel = AnchorLevel(2);
    pub const ALL: [AnchorLevel; 3] = [Self::LOW, Self::MID, Self::HIGH];

    pub fn new(level: u8) -> Result<Self, GlyphError> {
        if level <= 2 {
            Ok(AnchorLevel(level))
        } else {
            Err(GlyphError::AnchorLevel(level))
        }
    }

    pub fn level(self) -> u8 {
        self.0
    }

    /// Height of the band inside the unit box: 0.0, 0.5 or 1.0.
    pub fn height(self) -> f64 {
        f64::from(self.0) * 0.5
    }

    /// The level reached after flipping the box upside down.
    pub fn flipped(self) -> AnchorLevel {
        AnchorLevel(2 - self.0)
    }
}

impl TryFrom<u8> for AnchorLevel {
    type Error = GlyphError;
    fn try_from(v: u8) -> Result<Self, Self::Error> {
        AnchorLevel::new(v)
    }
}

impl From<AnchorLevel> for u8 {
    fn from(a: AnchorLevel) -> u8 {
        a.0
    }
}

impl fmt::Display for AnchorLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// How anchor levels are picked for new glyphs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum AnchorPolicy {
    #[default]
    Uniform,
    Fixed {
        start: AnchorLevel,
        end: AnchorLevel,
    },
}

/// Parameters for glyph generation and glyph-level mutation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GlyphConfig {
    pub min_points: usize,
    pub max_points: usize,
    /// Relative weight of each extra interior point; 1.0 is uniform.
    pub point_decay: f64,
    pub anchors: AnchorPolicy,
    /// Half-width of the random offset applied to segment handles.
    pub handle_jitter: f64,
    /// Half-width of the displacement square used by `MovePoint`.
    pub move_radius: f64,
}

impl Default for GlyphConfig {
    fn default() -> Self {
        GlyphConfig {
            min_points: 1,
            max_points: 6,
            point_decay: 0.7,
            anchors: AnchorPolicy::Uniform,
            handle_jitter: 0.12,
            move_radius: 0.15,
        }
    }
}

impl GlyphConfig {
    pub fn validate(&self) -> Result<(), GlyphError> {
        let bad = |field, message: String| Err(GlyphError::InvalidConfig { field, message });
        if self.min_points > self.max_points {
            return bad(
                "min_points",
                format!("{} exceeds max_points {}", self.min_points, self.max_points),
            );
        }
        if self.max_points > HARD_MAX_INTERIOR {
            return bad(
                "max_points",
                format!("{} exceeds the hard cap {HARD_MAX_INTERIOR}", self.max_points),
            );
        }
        if !(self.point_decay.is_finite() && self.point_decay > 0.0) {
            return bad("point_decay", format!("must be positive, got {}", self.point_decay));
        }
        if !(self.handle_jitter.is_finite() && self.handle_jitter >= 0.0) {
            return bad(
                "handle_jitter",
                format!("must be nonnegative, got {}", self.handle_jitter),
            );
        }
        if !(self.move_radius.is_finite() && self.move_radius >= 0.0) {
            return bad("move_radius", format!("must be nonnegative, got {}", self.move_radius));
        }
        Ok(())
    }
}

/// A single continuous stroke from `(0, start height)` to `(1, end height)`.
///
/// Interior points are the on-curve junctions between consecutive cubic
/// segments, so a glyph with `n` interior points has `n + 1` segments.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GlyphRecord", into = "GlyphRecord")]
pub struct Glyph {
    id: String,
    start_anchor: AnchorLevel,
    end_anchor: AnchorLevel,
    path: BezierPath,
}

#[derive(Serialize, Deserialize)]
struct GlyphRecord {
    id: String,
    start_anchor: AnchorLevel,
    end_anchor: AnchorLevel,
    segments: Vec<CubicSegment>,
}

impl TryFrom<GlyphRecord> for Glyph {
    type Error = GlyphError;
    fn try_from(r: GlyphRecord) -> Result<Self, Self::Error> {
        Ok(Glyph {
            id: r.id,
            start_anchor: r.start_anchor,
            end_anchor: r.end_anchor,
            path: BezierPath::from_segments_unchecked(r.segments)?,
        })
    }
}

impl From<Glyph> for GlyphRecord {
    fn from(g: Glyph) -> Self {
        GlyphRecord {
            id: g.id,
            start_anchor: g.start_anchor,
            end_anchor: g.end_anchor,
            segments: g.path.into_segments(),
        }
    }
}

impl Glyph {
    /// Assembles a glyph without checking it; see [`validate_glyph`].
    pub fn from_parts(
        id: impl Into<String>,
        start_anchor: AnchorLevel,
        end_anchor: AnchorLevel,
        path: BezierPath,
    ) -> Self {
        Glyph {
            id: id.into(),
            start_anchor,
            end_anchor,
            path,
        }
    }

    /// Assembles a glyph and rejects it if any invariant is violated.
    pub fn try_new(
        id: impl Into<String>,
        start_anchor: AnchorLevel,
        end_anchor: AnchorLevel,
        path: BezierPath,
    ) -> Result<Self, GlyphError> {
        Glyph::from_parts(id, start_anchor, end_anchor, path).checked()
    }

    /// Builds a glyph along a polygon of straight pieces through `waypoints`.
    pub fn polygonal(
        id: impl Into<String>,
        start_anchor: AnchorLevel,
        end_anchor: AnchorLevel,
        waypoints: &[Point],
    ) -> Result<Self, GlyphError> {
        let mut nodes = Vec::with_capacity(waypoints.len() + 2);
        nodes.push(Point::new(0.0, start_anchor.height()));
        nodes.extend_from_slice(waypoints);
        nodes.push(Point::new(1.0, end_anchor.height()));
        let segments = nodes.windows(2).map(|w| CubicSegment::line(w[0], w[1])).collect();
        Glyph::try_new(id, start_anchor, end_anchor, BezierPath::new(segments)?)
    }

    pub fn checked(self) -> Result<Self, GlyphError> {
        let report = validate_glyph(&self);
        if report.is_valid() {
            Ok(self)
        } else {
            Err(GlyphError::Invalid { id: self.id, report })
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn start_anchor(&self) -> AnchorLevel {
        self.start_anchor
    }

    pub fn end_anchor(&self) -> AnchorLevel {
        self.end_anchor
    }

    pub fn path(&self) -> &BezierPath {
        &self.path
    }

    pub fn interior_points(&self) -> usize {
        self.path.segments().len() - 1
    }

    pub fn start_point(&self) -> Point {
        Point::new(0.0, self.start_anchor.height())
    }

    pub fn end_point(&self) -> Point {
        Point::new(1.0, self.end_anchor.height())
    }

    /// Same anchors and control points, ignoring the id.
    pub fn same_shape(&self, other: &Glyph) -> bool {
        self.start_anchor == other.start_anchor && self.end_anchor == other.end_anchor && self.path == other.path
    }

    /// Largest per-coordinate difference between two glyphs' control points,
    /// or infinity when their segment counts differ.
    pub fn control_point_distance(&self, other: &Glyph) -> f64 {
        if self.path.segments().len() != other.path.segments().len() {
            return f64::INFINITY;
        }
        self.path
            .points()
            .zip(other.path.points())
            .map(|(a, b)| (a.x - b.x).abs().max((a.y - b.y).abs()))
            .fold(0.0, f64::max)
    }

    /// Brings a glyph back into canonical form: endpoints snapped onto their
    /// anchors, every other control point clamped into the overshoot band.
    pub fn renormalized(mut self) -> Self {
        let start = self.start_point();
        let end = self.end_point();
        let mut segments = self.path.into_segments();
        for seg in segments.iter_mut() {
            for p in seg.0.iter_mut() {
                *p = clamp_point(*p);
            }
        }
        let last = segments.len() - 1;
        segments[0].0[0] = start;
        segments[last].0[3] = end;
        self.path = BezierPath::from_segments_unchecked(segments).expect("glyph path is non-empty");
        self
    }

    /// Splits segment `k` at its parameter midpoint. The drawn curve is
    /// unchanged; the glyph gains one interior point with index `k`.
    pub fn split_segment(&self, k: usize) -> Option<Glyph> {
        let segs = self.path.segments();
        if k >= segs.len() {
            return None;
        }
        let (l, r) = segs[k].subdivide(0.5);
        let mut out = Vec::with_capacity(segs.len() + 1);
        out.extend_from_slice(&segs[..k]);
        out.push(l);
        out.push(r);
        out.extend_from_slice(&segs[k + 1..]);
        Some(self.with_segments(out))
    }

    /// Removes interior point `j` (the junction after segment `j`), merging
    /// its two segments. Exactly undoes `split_segment(j)`.
    pub fn merge_junction(&self, j: usize) -> Option<Glyph> {
        let segs = self.path.segments();
        if j + 1 >= segs.len() {
            return None;
        }
        let merged = CubicSegment::join_halves(&segs[j], &segs[j + 1]);
        let mut out = Vec::with_capacity(segs.len() - 1);
        out.extend_from_slice(&segs[..j]);
        out.push(merged);
        out.extend_from_slice(&segs[j + 2..]);
        Some(self.with_segments(out).renormalized())
    }

    /// Reflection across the vertical midline. The stroke is reversed so it
    /// still runs left to right; the anchors trade places.
    pub fn mirrored_x(&self) -> Glyph {
        let segments = self
            .path
            .segments()
            .iter()
            .rev()
            .map(|s| s.reversed().map(|p| Point::new(1.0 - p.x, p.y)))
            .collect();
        Glyph {
            id: self.id.clone(),
            start_anchor: self.end_anchor,
            end_anchor: self.start_anchor,
            path: BezierPath::from_segments_unchecked(segments).expect("non-empty"),
        }
        .renormalized()
    }

    /// Reflection across the horizontal midline; anchor levels 0 and 2 swap.
    pub fn mirrored_y(&self) -> Glyph {
        Glyph {
            id: self.id.clone(),
            start_anchor: self.start_anchor.flipped(),
            end_anchor: self.end_anchor.flipped(),
            path: self.path.map_points(|p| Point::new(p.x, 1.0 - p.y)),
        }
        .renormalized()
    }

    fn with_segments(&self, segments: Vec<CubicSegment>) -> Glyph {
        Glyph {
            id: self.id.clone(),
            start_anchor: self.start_anchor,
            end_anchor: self.end_anchor,
            path: BezierPath::from_segments_unchecked(segments).expect("non-empty"),
        }
    }
}

fn clamp_point(p: Point) -> Point {
    Point::new(p.x.clamp(MIN_COORD, MAX_COORD), p.y.clamp(MIN_COORD, MAX_COORD))
}

fn glyph_id(value: u64) -> String {
    format!("g{value:016x}")
}

/// Generates a glyph deterministically from `seed`.
///
/// The interior point count is drawn from `min_points..=max_points` with
/// weight `point_decay^(k - min_points)`. Interior points are uniform in the
/// unit box; each segment's handles start at the chord thirds and are then
/// jittered. With zero interior points the glyph is the straight chord.
pub fn generate_glyph(seed: u64, config: &GlyphConfig) -> Result<Glyph, GlyphError> {
    config.validate()?;
    let mut rng = rng_from_seed(seed);
    let (start, end) = match config.anchors {
        AnchorPolicy::Uniform => (AnchorLevel(rng.random_range(0..3)), AnchorLevel(rng.random_range(0..3))),
        AnchorPolicy::Fixed { start, end } => (start, end),
    };
    let count = draw_point_count(&mut rng, config);

    let mut nodes = Vec::with_capacity(count + 2);
    nodes.push(Point::new(0.0, start.height()));
    for _ in 0..count {
        nodes.push(Point::new(rng.random::<f64>(), rng.random::<f64>()));
    }
    nodes.push(Point::new(1.0, end.height()));

    let segments = nodes
        .windows(2)
        .map(|w| {
            let mut seg = CubicSegment::line(w[0], w[1]);
            if count > 0 {
                for h in &mut seg.0[1..3] {
                    *h = clamp_point(*h + jitter(&mut rng, config.handle_jitter));
                }
            }
            seg
        })
        .collect();
    let glyph = Glyph {
        id: glyph_id(seed),
        start_anchor: start,
        end_anchor: end,
        path: BezierPath::new(segments)?,
    };
    Ok(glyph.renormalized())
}

fn draw_point_count(rng: &mut impl Rng, config: &GlyphConfig) -> usize {
    let span = config.max_points - config.min_points;
    if span == 0 {
        return config.min_points;
    }
    let weights: Vec<f64> = (0..=span as i32).map(|k| config.point_decay.powi(k)).collect();
    let total: f64 = weights.iter().sum();
    let mut u = rng.random::<f64>() * total;
    for (k, w) in weights.iter().enumerate() {
        if u < *w {
            return config.min_points + k;
        }
        u -= w;
    }
    config.max_points
}

fn jitter(rng: &mut impl Rng, half_width: f64) -> Point {
    if half_width == 0.0 {
        return Point::default();
    }
    Point::new(
        rng.random_range(-half_width..=half_width),
        rng.random_range(-half_width..=half_width),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GlyphMutation {
    AddPoint,
    RemovePoint,
    MovePoint,
    MirrorX,
    MirrorY,
}

impl GlyphMutation {
    pub const ALL: [GlyphMutation; 5] = [
        GlyphMutation::AddPoint,
        GlyphMutation::RemovePoint,
        GlyphMutation::MovePoint,
        GlyphMutation::MirrorX,
        GlyphMutation::MirrorY,
    ];
}

#[derive(Debug, Clone, PartialEq)]
pub enum MutationOutcome {
    Applied(Glyph),
    /// The operator has nothing to act on, e.g. removing from a glyph
    /// without interior points.
    NotApplicable,
}

impl MutationOutcome {
    pub fn applied(self) -> Option<Glyph> {
        match self {
            MutationOutcome::Applied(g) => Some(g),
            MutationOutcome::NotApplicable => None,
        }
    }
}

/// Applies one glyph-level mutation. The result gets a fresh id drawn from
/// `rng` and is always a valid glyph.
pub fn mutate_glyph(g: &Glyph, kind: GlyphMutation, config: &GlyphConfig, rng: &mut impl RngCore) -> MutationOutcome {
    let segs = g.path.segments().len();
    let mutated = match kind {
        GlyphMutation::AddPoint => {
            if g.interior_points() >= config.max_points.min(HARD_MAX_INTERIOR) {
                return MutationOutcome::NotApplicable;
            }
            g.split_segment(rng.random_range(0..segs))
        }
        GlyphMutation::RemovePoint => {
            if g.interior_points() == 0 {
                return MutationOutcome::NotApplicable;
            }
            g.merge_junction(rng.random_range(0..segs - 1))
        }
        GlyphMutation::MovePoint => Some(move_point(g, config.move_radius, rng)),
        GlyphMutation::MirrorX => Some(g.mirrored_x()),
        GlyphMutation::MirrorY => Some(g.mirrored_y()),
    };
    match mutated {
        Some(m) => MutationOutcome::Applied(m.with_id(glyph_id(rng.next_u64()))),
        None => MutationOutcome::NotApplicable,
    }
}

// Movable points are the handles of every segment and every interior
// junction; anchors stay put.
fn move_point(g: &Glyph, radius: f64, rng: &mut impl RngCore) -> Glyph {
    let mut segments = g.path.segments().to_vec();
    let n = segments.len();
    let movable = 3 * n - 1;
    let pick = rng.random_range(0..movable);
    let (k, slot) = (pick / 3, pick % 3 + 1);
    let delta = jitter(rng, radius);
    let moved = clamp_point(segments[k].0[slot] + delta);
    segments[k].0[slot] = moved;
    if slot == 3 {
        segments[k + 1].0[0] = moved;
    }
    g.with_segments(segments).renormalized()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Endpoint {
    Start,
    End,
}

/// One violated glyph invariant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finding {
    AnchorMismatch {
        endpoint: Endpoint,
        expected: Point,
        found: Point,
    },
    OutOfBounds {
        segment: usize,
        index: usize,
        point: Point,
    },
    Continuity {
        segment: usize,
    },
    TooManyPoints {
        count: usize,
        max: usize,
    },
    NonFinite {
        segment: usize,
        index: usize,
    },
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::AnchorMismatch {
                endpoint,
                expected,
                found,
            } => write!(
                f,
                "anchor mismatch at {endpoint:?}: expected ({}, {}), found ({}, {})",
                expected.x, expected.y, found.x, found.y
            ),
            Finding::OutOfBounds { segment, index, point } => write!(
                f,
                "control point {index} of segment {segment} at ({}, {}) is out of bounds",
                point.x, point.y
            ),
            Finding::Continuity { segment } => {
                write!(
                    f,
                    "continuity break: segment {segment} does not start where its predecessor ends"
                )
            }
            Finding::TooManyPoints { count, max } => {
                write!(f, "{count} interior points exceed the maximum of {max}")
            }
            Finding::NonFinite { segment, index } => {
                write!(f, "control point {index} of segment {segment} is not finite")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.findings.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.findings.is_empty() {
            return f.write_str("valid");
        }
        for (i, finding) in self.findings.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{finding}")?;
        }
        Ok(())
    }
}

pub fn validate_glyph(g: &Glyph) -> ValidationReport {
    validate_glyph_with(g, HARD_MAX_INTERIOR)
}

/// Lists every violated invariant, using `max_points` as the interior cap.
pub fn validate_glyph_with(g: &Glyph, max_points: usize) -> ValidationReport {
    let mut findings = Vec::new();
    let segs = g.path.segments();

    let checks = [
        (Endpoint::Start, g.start_point(), g.path.start()),
        (Endpoint::End, g.end_point(), g.path.end()),
    ];
    for (endpoint, expected, found) in checks {
        let off = (expected.x - found.x).abs().max((expected.y - found.y).abs());
        if off.is_nan() || off > ANCHOR_TOLERANCE {
            findings.push(Finding::AnchorMismatch {
                endpoint,
                expected,
                found,
            });
        }
    }
    for (k, seg) in segs.iter().enumerate() {
        for (i, p) in seg.0.iter().enumerate() {
            if !p.is_finite() {
                findings.push(Finding::NonFinite { segment: k, index: i });
            } else if !(MIN_COORD..=MAX_COORD).contains(&p.x) || !(MIN_COORD..=MAX_COORD).contains(&p.y) {
                findings.push(Finding::OutOfBounds {
                    segment: k,
                    index: i,
                    point: *p,
                });
            }
        }
    }
    for k in 1..segs.len() {
        if segs[k - 1].end() != segs[k].start() {
            findings.push(Finding::Continuity { segment: k });
        }
    }
    let max = max_points.min(HARD_MAX_INTERIOR);
    if g.interior_points() > max {
        findings.push(Finding::TooManyPoints {
            count: g.interior_points(),
            max,
        });
    }
    ValidationReport { findings }
}
