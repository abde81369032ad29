// Copyright 2026 the Scriptsmith Authors
// SPDX-License-Identifier: Apache-2.0

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use scriptsmith::glyph::{generate_glyph, mutate_glyph, validate_glyph, GlyphConfig, GlyphMutation};
use scriptsmith::metrics::{dissimilarity, glyph_fitness, GlyphWeights, MetricParams};

fn mutation() -> impl Strategy<Value = GlyphMutation> {
    prop::sample::select(GlyphMutation::ALL.to_vec())
}

proptest! {
    #[test]
    fn generated_glyphs_are_valid(seed: u64) {
        let g = generate_glyph(seed, &GlyphConfig::default()).unwrap();
        prop_assert!(validate_glyph(&g).is_valid());
        prop_assert!(g.interior_points() <= GlyphConfig::default().max_points);
        prop_assert_eq!(g, generate_glyph(seed, &GlyphConfig::default()).unwrap());
    }

    #[test]
    fn mutation_chains_stay_valid(seed: u64, ops in prop::collection::vec(mutation(), 1..30)) {
        let cfg = GlyphConfig::default();
        let mut g = generate_glyph(seed, &cfg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for op in ops {
            if let Some(next) = mutate_glyph(&g, op, &cfg, &mut rng).applied() {
                prop_assert!(validate_glyph(&next).is_valid(), "{:?}", validate_glyph(&next));
                prop_assert_ne!(next.id(), g.id());
                g = next;
            }
        }
    }

    #[test]
    fn fitness_is_in_unit_interval(seed: u64) {
        let g = generate_glyph(seed, &GlyphConfig::default()).unwrap();
        let f = glyph_fitness(&g, &GlyphWeights::default(), &MetricParams::default()).unwrap();
        prop_assert!(f > 0.0 && f <= 1.0);
    }

    #[test]
    fn mirrors_preserve_fitness(seed: u64) {
        let g = generate_glyph(seed, &GlyphConfig::default()).unwrap();
        let (w, p) = (GlyphWeights::default(), MetricParams::default());
        let f = glyph_fitness(&g, &w, &p).unwrap();
        for m in [g.mirrored_x(), g.mirrored_y()] {
            prop_assert!((glyph_fitness(&m, &w, &p).unwrap() - f).abs() < 1e-9);
        }
    }

    #[test]
    fn dissimilarity_is_bounded(a: u64, b: u64) {
        let cfg = GlyphConfig::default();
        let (ga, gb) = (generate_glyph(a, &cfg).unwrap(), generate_glyph(b, &cfg).unwrap());
        let d = dissimilarity(&ga, &gb, &MetricParams::default()).unwrap();
        prop_assert!((0.0..=1.0).contains(&d));
    }
}

#[test]
fn add_then_remove_restores_shape() {
    let cfg = GlyphConfig::default();
    for seed in 0..200 {
        let g = generate_glyph(seed, &cfg).unwrap();
        for k in 0..=g.interior_points() {
            let split = g.split_segment(k).unwrap();
            let back = split.merge_junction(k).unwrap();
            assert!(back.control_point_distance(&g) < 1e-12, "seed {seed} segment {k}");
        }
    }
}
