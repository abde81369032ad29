// Copyright 2026 the Scriptsmith Authors
// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const ENGLISH: &str = include_str!("../data/english.txt");

/// Sentences of the fixture, reshuffled with `seed` until the text reaches
/// `min_bytes`.
pub fn english_sample(min_bytes: usize, seed: u64) -> String {
    let sentences: Vec<&str> = ENGLISH
        .split_inclusive(['.', '?', '!'])
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = String::with_capacity(min_bytes + ENGLISH.len());
    let mut order: Vec<usize> = (0..sentences.len()).collect();
    while out.len() < min_bytes {
        order.shuffle(&mut rng);
        for (k, &i) in order.iter().enumerate() {
            out.push_str(sentences[i]);
            out.push(if k % 7 == 6 { '\n' } else { ' ' });
        }
    }
    out
}

/// Plain ASCII letter counts, case-folded.
pub fn count_letters(text: &str) -> [u64; 26] {
    let mut counts = [0u64; 26];
    for b in text.bytes() {
        if b.is_ascii_alphabetic() {
            counts[(b.to_ascii_lowercase() - b'a') as usize] += 1;
        }
    }
    counts
}

/// In-word adjacent pair counts, indexed `[first][second]`.
pub fn count_pairs(text: &str) -> Vec<[u64; 26]> {
    let mut counts = vec![[0u64; 26]; 26];
    for word in text.split(|c: char| !c.is_ascii_alphabetic()) {
        let w: Vec<usize> = word.bytes().map(|b| (b.to_ascii_lowercase() - b'a') as usize).collect();
        for pair in w.windows(2) {
            counts[pair[0]][pair[1]] += 1;
        }
    }
    counts
}

fn ranks(v: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..v.len()).collect();
    idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
    let mut r = vec![0.0; v.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
            j += 1;
        }
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &idx[i..=j] {
            r[k] = avg;
        }
        i = j + 1;
    }
    r
}

/// Spearman correlation with average ranks for ties.
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let mx = rx.iter().sum::<f64>() / n;
    let my = ry.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in rx.iter().zip(&ry) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Arc length of a cubic by composite Simpson integration of its speed.
pub fn cubic_length(p: [(f64, f64); 4], steps: usize) -> f64 {
    let speed = |t: f64| {
        let mt = 1.0 - t;
        let dx = 3.0 * mt * mt * (p[1].0 - p[0].0) + 6.0 * mt * t * (p[2].0 - p[1].0) + 3.0 * t * t * (p[3].0 - p[2].0);
        let dy = 3.0 * mt * mt * (p[1].1 - p[0].1) + 6.0 * mt * t * (p[2].1 - p[1].1) + 3.0 * t * t * (p[3].1 - p[2].1);
        dx.hypot(dy)
    };
    let n = steps + steps % 2;
    let h = 1.0 / n as f64;
    let mut s = speed(0.0) + speed(1.0);
    for i in 1..n {
        s += speed(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}
