// Copyright 2026 the Scriptsmith Authors
// SPDX-License-Identifier: Apache-2.0

//! Synthesis of writing-system alphabets.
//!
//! Glyphs are single Bezier strokes in the unit square with start and end
//! anchored at one of three heights ([`glyph`]). They are scored for
//! simplicity and told apart by turning-angle histograms ([`metrics`]),
//! mapped onto letters using corpus statistics ([`corpus`], [`alphabet`]),
//! optimized as whole alphabets by a genetic search ([`evolve`]) and drawn
//! as SVG ([`render`]). The [`cli`] module wires these into the
//! `scriptsmith` command.

pub mod alphabet;
pub mod cli;
pub mod corpus;
pub mod evolve;
pub mod geometry;
pub mod glyph;
pub mod metrics;
pub mod render;
pub mod rng;

pub use alphabet::{
    alphabet_fitness, assign_exhaustive, assign_greedy, connection_score, Alphabet, AlphabetDocument, AlphabetScore,
    AlphabetWeights, Scoring,
};
pub use corpus::{analyze_corpus, top_bigrams, CorpusStats};
pub use evolve::{evolve, Evolution, EvolutionConfig, EvolutionReport, MutationOp, MutationRates};
pub use geometry::{
    arc_length, flatten, normalize_to_unit_box, turning_angles, BezierPath, CubicSegment, Point, Polyline,
};
pub use glyph::{generate_glyph, mutate_glyph, validate_glyph, AnchorLevel, Glyph, GlyphConfig, GlyphMutation};
pub use metrics::{
    angle_histogram, complexity, connection_ease, dissimilarity, glyph_fitness, sharp_angle_count, GlyphMetrics,
    GlyphWeights, MetricParams,
};
