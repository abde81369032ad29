// Copyright 2026 the Scriptsmith Authors
// SPDX-License-Identifier: Apache-2.0

//! Per-glyph scores and pairwise glyph comparisons.
//!
//! Everything here is measured on the flattened polyline of a glyph:
//!
//! * complexity is total absolute turning divided by arc length (this is
//!   also the "curvature per glyph" fluency measure; both are the sum of
//!   absolute direction changes per unit of distance),
//! * sharp angles are polyline vertices turning more than a threshold,
//! * the angle histogram distributes turning vertices over `[0, π]`, each
//!   weighted by the length of polyline it stands for.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{arc_length, flatten, turning_angles, GeometryError, Polyline};
use crate::glyph::Glyph;

/// Turning below this is treated as straight continuation.
pub const TURN_EPSILON: f64 = 1e-9;
/// Glyphs shorter than this cannot be scored.
pub const MIN_ARC_LENGTH: f64 = 1e-9;
/// 70 degrees.
pub const DEFAULT_SHARP_THRESHOLD: f64 = 70.0 * PI / 180.0;
pub const DEFAULT_BIN_COUNT: usize = 18;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MetricsError {
    #[error("glyph `{0}` is degenerate (arc length below {MIN_ARC_LENGTH})")]
    Degenerate(String),
    #[error("invalid metric parameter `{field}`: {message}")]
    InvalidParameter { field: &'static str, message: String },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Measurement settings shared by every metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MetricParams {
    pub segments_per_curve: usize,
    pub bin_count: usize,
    pub sharp_threshold: f64,
    /// Added to the dissimilarity of glyphs whose anchors differ.
    pub anchor_bonus: f64,
}

impl Default for MetricParams {
    fn default() -> Self {
        MetricParams {
            segments_per_curve: crate::geometry::DEFAULT_SEGMENTS_PER_CURVE,
            bin_count: DEFAULT_BIN_COUNT,
            sharp_threshold: DEFAULT_SHARP_THRESHOLD,
            anchor_bonus: 0.0,
        }
    }
}

impl MetricParams {
    pub fn validate(&self) -> Result<(), MetricsError> {
        let bad = |field, message: String| Err(MetricsError::InvalidParameter { field, message });
        if self.segments_per_curve < 2 {
            return bad(
                "segments_per_curve",
                format!("must be at least 2, got {}", self.segments_per_curve),
            );
        }
        if self.bin_count < 2 {
            return bad("bin_count", format!("must be at least 2, got {}", self.bin_count));
        }
        if !(self.sharp_threshold > 0.0 && self.sharp_threshold < PI) {
            return bad(
                "sharp_threshold",
                format!("must lie in (0, π), got {}", self.sharp_threshold),
            );
        }
        if !(self.anchor_bonus.is_finite() && self.anchor_bonus >= 0.0) {
            return bad(
                "anchor_bonus",
                format!("must be nonnegative, got {}", self.anchor_bonus),
            );
        }
        Ok(())
    }
}

/// Penalty weights combined into a glyph's fitness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GlyphWeights {
    pub complexity: f64,
    pub sharp_angles: f64,
    pub control_points: f64,
}

impl Default for GlyphWeights {
    fn default() -> Self {
        GlyphWeights {
            complexity: 1.0,
            sharp_angles: 1.0,
            control_points: 0.1,
        }
    }
}

impl GlyphWeights {
    pub fn validate(&self) -> Result<(), MetricsError> {
        for (field, w) in [
            ("complexity", self.complexity),
            ("sharp_angles", self.sharp_angles),
            ("control_points", self.control_points),
        ] {
            if !(w.is_finite() && w >= 0.0) {
                return Err(MetricsError::InvalidParameter {
                    field,
                    message: format!("weight must be nonnegative, got {w}"),
                });
            }
        }
        if self.complexity + self.sharp_angles + self.control_points == 0.0 {
            return Err(MetricsError::InvalidParameter {
                field: "complexity",
                message: "at least one glyph weight must be positive".into(),
            });
        }
        Ok(())
    }

    /// `exp(-(w_c·complexity + w_s·sharp + w_p·points))`.
    pub fn fitness(&self, complexity: f64, sharp_angle_count: usize, control_point_count: usize) -> f64 {
        let penalty = self.complexity * complexity
            + self.sharp_angles * sharp_angle_count as f64
            + self.control_points * control_point_count as f64;
        (-penalty).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GlyphMetrics {
    pub complexity: f64,
    pub total_turning: f64,
    pub arc_length: f64,
    pub sharp_angle_count: usize,
    pub control_point_count: usize,
    pub fitness: f64,
}

/// Normalized distribution of turning over `[0, π]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleHistogram {
    bins: Vec<f64>,
}

impl AngleHistogram {
    pub fn bins(&self) -> &[f64] {
        &self.bins
    }

    pub fn bin_count(&self) -> usize {
        self.bins.len()
    }

    /// True for glyphs that never turn.
    pub fn is_empty(&self) -> bool {
        self.bins.iter().all(|&w| w == 0.0)
    }

    /// Half the L1 distance, in `[0, 1]`. A histogram with no mass stands
    /// for a perfectly straight stroke and compares as a unit mass in the
    /// lowest bin.
    pub fn distance(&self, other: &AngleHistogram) -> f64 {
        assert_eq!(self.bins.len(), other.bins.len(), "histogram bin counts differ");
        let a_straight = self.is_empty();
        let b_straight = other.is_empty();
        let l1: f64 = (0..self.bins.len())
            .map(|i| {
                let a = if a_straight {
                    f64::from(u8::from(i == 0))
                } else {
                    self.bins[i]
                };
                let b = if b_straight {
                    f64::from(u8::from(i == 0))
                } else {
                    other.bins[i]
                };
                (a - b).abs()
            })
            .sum();
        (0.5 * l1).min(1.0)
    }
}

fn polyline(g: &Glyph, segments_per_curve: usize) -> Result<Polyline, MetricsError> {
    let poly = flatten(g.path(), segments_per_curve).map_err(|e| match e {
        GeometryError::DegeneratePolyline => MetricsError::Degenerate(g.id().to_owned()),
        other => MetricsError::Geometry(other),
    })?;
    if arc_length(&poly) < MIN_ARC_LENGTH {
        return Err(MetricsError::Degenerate(g.id().to_owned()));
    }
    Ok(poly)
}

/// Total absolute turning per unit arc length. Straight glyphs score 0.
pub fn complexity(g: &Glyph, segments_per_curve: usize) -> Result<f64, MetricsError> {
    let poly = polyline(g, segments_per_curve)?;
    Ok(total_turning(&turning_angles(&poly)) / arc_length(&poly))
}

// Sub-epsilon headings changes are sampling noise on straight pieces.
fn total_turning(angles: &[f64]) -> f64 {
    angles.iter().filter(|&&a| a >= TURN_EPSILON).sum()
}

pub fn sharp_angle_count(g: &Glyph, threshold: f64, segments_per_curve: usize) -> Result<usize, MetricsError> {
    if !(threshold > 0.0 && threshold < PI) {
        return Err(MetricsError::InvalidParameter {
            field: "sharp_threshold",
            message: format!("must lie in (0, π), got {threshold}"),
        });
    }
    let poly = polyline(g, segments_per_curve)?;
    Ok(turning_angles(&poly).iter().filter(|&&a| a > threshold).count())
}

pub fn glyph_metrics(g: &Glyph, weights: &GlyphWeights, params: &MetricParams) -> Result<GlyphMetrics, MetricsError> {
    let poly = polyline(g, params.segments_per_curve)?;
    Ok(metrics_of(g, &poly, weights, params))
}

fn metrics_of(g: &Glyph, poly: &Polyline, weights: &GlyphWeights, params: &MetricParams) -> GlyphMetrics {
    let angles = turning_angles(poly);
    let total_turning = total_turning(&angles);
    let length = arc_length(poly);
    let complexity = total_turning / length;
    let sharp_angle_count = angles.iter().filter(|&&a| a > params.sharp_threshold).count();
    let control_point_count = g.interior_points();
    GlyphMetrics {
        complexity,
        total_turning,
        arc_length: length,
        sharp_angle_count,
        control_point_count,
        fitness: weights.fitness(complexity, sharp_angle_count, control_point_count),
    }
}

/// Glyph fitness `f_i` in `(0, 1]`.
pub fn glyph_fitness(g: &Glyph, weights: &GlyphWeights, params: &MetricParams) -> Result<f64, MetricsError> {
    weights.validate()?;
    Ok(glyph_metrics(g, weights, params)?.fitness)
}

pub fn angle_histogram(g: &Glyph, bin_count: usize, segments_per_curve: usize) -> Result<AngleHistogram, MetricsError> {
    if bin_count < 2 {
        return Err(MetricsError::InvalidParameter {
            field: "bin_count",
            message: format!("must be at least 2, got {bin_count}"),
        });
    }
    let poly = polyline(g, segments_per_curve)?;
    Ok(histogram_of(&poly, bin_count))
}

fn histogram_of(poly: &Polyline, bin_count: usize) -> AngleHistogram {
    let angles = turning_angles(poly);
    let edges: Vec<f64> = poly.edge_lengths().collect();
    let mut bins = vec![0.0; bin_count];
    // The closing vertex of a closed polyline sits between the last and first edges.
    for (i, &angle) in angles.iter().enumerate() {
        if angle < TURN_EPSILON {
            continue;
        }
        let next = edges[(i + 1) % edges.len()];
        let weight = 0.5 * (edges[i] + next);
        let bin = ((angle / PI * bin_count as f64) as usize).min(bin_count - 1);
        bins[bin] += weight;
    }
    let total: f64 = bins.iter().sum();
    if total > 0.0 {
        for b in &mut bins {
            *b /= total;
        }
    }
    AngleHistogram { bins }
}

/// Everything the alphabet scorer needs to know about one glyph.
#[derive(Debug, Clone, PartialEq)]
pub struct GlyphProfile {
    pub metrics: GlyphMetrics,
    pub histogram: AngleHistogram,
    pub start_anchor: crate::glyph::AnchorLevel,
    pub end_anchor: crate::glyph::AnchorLevel,
}

impl GlyphProfile {
    pub fn new(g: &Glyph, weights: &GlyphWeights, params: &MetricParams) -> Result<Self, MetricsError> {
        let poly = polyline(g, params.segments_per_curve)?;
        Ok(GlyphProfile {
            metrics: metrics_of(g, &poly, weights, params),
            histogram: histogram_of(&poly, params.bin_count),
            start_anchor: g.start_anchor(),
            end_anchor: g.end_anchor(),
        })
    }

    pub fn dissimilarity(&self, other: &GlyphProfile, anchor_bonus: f64) -> f64 {
        let d = self.histogram.distance(&other.histogram);
        let anchors_differ = self.start_anchor != other.start_anchor || self.end_anchor != other.end_anchor;
        if anchors_differ && anchor_bonus > 0.0 {
            (d + anchor_bonus).min(1.0)
        } else {
            d
        }
    }
}

/// Glyph dissimilarity `D` in `[0, 1]`.
pub fn dissimilarity(a: &Glyph, b: &Glyph, params: &MetricParams) -> Result<f64, MetricsError> {
    let ha = GlyphProfile::new(a, &GlyphWeights::default(), params)?;
    let hb = GlyphProfile::new(b, &GlyphWeights::default(), params)?;
    Ok(ha.dissimilarity(&hb, params.anchor_bonus))
}

/// `1` when `a` ends at the height `b` starts at, else `0`.
pub fn connection_ease(a: &Glyph, b: &Glyph) -> u8 {
    u8::from(a.end_anchor() == b.start_anchor())
}
