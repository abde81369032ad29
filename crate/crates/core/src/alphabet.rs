// Copyright 2026 the Scriptsmith Authors
// SPDX-License-Identifier: Apache-2.0

//! Letter-to-glyph mappings and their scores.
//!
//! An alphabet is scored on four normalized terms, each in `[0, 1]`:
//!
//! | term                    | raw value            | normalized by   |
//! |-------------------------|----------------------|-----------------|
//! | glyph fitness           | `Σ f_i`              | `n`             |
//! | dissimilarity           | `Σ_{i<j} D_ij`       | `n(n-1)/2`      |
//! | frequency-weighted fit  | `Σ f_i p_i`          | (already ≤ 1)   |
//! | connection score        | `Σ_ij E_ij P_ij`     | (already ≤ 1)   |
//!
//! and the total is their weighted sum.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::CorpusStats;
use crate::glyph::{validate_glyph, Glyph, ValidationReport};
use crate::metrics::{GlyphProfile, GlyphWeights, MetricParams, MetricsError};

/// Largest letter count `assign_exhaustive` accepts.
pub const EXHAUSTIVE_MAX_LETTERS: usize = 8;
/// Largest pool `assign_exhaustive` accepts.
pub const EXHAUSTIVE_MAX_POOL: usize = 10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlphabetError {
    #[error("alphabet has no letters")]
    Empty,
    #[error("glyph `{id}` is assigned to both `{first}` and `{second}`")]
    DuplicateGlyph { id: String, first: char, second: char },
    #[error("glyph for `{letter}` is invalid: {report}")]
    InvalidGlyph { letter: char, report: ValidationReport },
    #[error("letter `{0}` has no glyph")]
    MissingGlyph(char),
    #[error("letter `{0}` is not in the alphabet")]
    UnknownLetter(char),
    #[error(
        "alphabet and corpus cover different letters (missing from alphabet: {missing:?}; not in corpus: {extra:?})"
    )]
    Coverage { missing: Vec<char>, extra: Vec<char> },
    #[error("pool has {have} glyphs but {needed} letters need one each")]
    PoolTooSmall { needed: usize, have: usize },
    #[error("pool contains glyph id `{0}` twice")]
    DuplicatePoolId(String),
    #[error("exhaustive search is limited to {EXHAUSTIVE_MAX_LETTERS} letters and {EXHAUSTIVE_MAX_POOL} glyphs (got {letters} and {pool}); use the evolutionary search instead")]
    TooLarge { letters: usize, pool: usize },
    #[error("invalid weight `{field}`: {message}")]
    InvalidWeight { field: &'static str, message: String },
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// Weights of the four normalized alphabet terms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AlphabetWeights {
    pub fitness: f64,
    pub dissimilarity: f64,
    pub frequency: f64,
    pub connection: f64,
}

impl Default for AlphabetWeights {
    fn default() -> Self {
        AlphabetWeights {
            fitness: 1.0,
            dissimilarity: 1.0,
            frequency: 1.0,
            connection: 1.0,
        }
    }
}

/// Everything that determines how an alphabet is scored.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Scoring {
    pub glyph: GlyphWeights,
    pub alphabet: AlphabetWeights,
    pub metrics: MetricParams,
}

impl Scoring {
    pub fn validate(&self) -> Result<(), AlphabetError> {
        self.glyph.validate()?;
        self.metrics.validate()?;
        let w = &self.alphabet;
        for (field, v) in [
            ("fitness", w.fitness),
            ("dissimilarity", w.dissimilarity),
            ("frequency", w.frequency),
            ("connection", w.connection),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(AlphabetError::InvalidWeight {
                    field,
                    message: format!("must be nonnegative, got {v}"),
                });
            }
        }
        Ok(())
    }

    pub fn profile(&self, g: &Glyph) -> Result<GlyphProfile, MetricsError> {
        GlyphProfile::new(g, &self.glyph, &self.metrics)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphabetScore {
    pub letters: usize,
    pub sum_fitness: f64,
    pub sum_dissimilarity: f64,
    pub freq_weighted_fitness: f64,
    pub connection_score: f64,
    pub mean_fitness: f64,
    pub mean_dissimilarity: f64,
    pub total: f64,
}

/// A bijection from letters to glyphs, optionally carrying its last score.
#[derive(Debug, Clone, PartialEq)]
pub struct Alphabet {
    mapping: BTreeMap<char, Glyph>,
    score: Option<AlphabetScore>,
}

impl Alphabet {
    /// Checks that every glyph is valid and no glyph id is used twice.
    pub fn new(mapping: BTreeMap<char, Glyph>) -> Result<Self, AlphabetError> {
        if mapping.is_empty() {
            return Err(AlphabetError::Empty);
        }
        let mut seen: BTreeMap<&str, char> = BTreeMap::new();
        for (&letter, g) in &mapping {
            if let Some(&first) = seen.get(g.id()) {
                return Err(AlphabetError::DuplicateGlyph {
                    id: g.id().to_owned(),
                    first,
                    second: letter,
                });
            }
            seen.insert(g.id(), letter);
            let report = validate_glyph(g);
            if !report.is_valid() {
                return Err(AlphabetError::InvalidGlyph { letter, report });
            }
        }
        Ok(Alphabet { mapping, score: None })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (char, Glyph)>) -> Result<Self, AlphabetError> {
        Alphabet::new(pairs.into_iter().collect())
    }

    pub fn mapping(&self) -> &BTreeMap<char, Glyph> {
        &self.mapping
    }

    pub fn letters(&self) -> impl Iterator<Item = char> + '_ {
        self.mapping.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }

    pub fn glyph(&self, letter: char) -> Option<&Glyph> {
        self.mapping.get(&letter)
    }

    pub fn score(&self) -> Option<&AlphabetScore> {
        self.score.as_ref()
    }

    pub fn contains_id(&self, id: &str) -> bool {
        self.mapping.values().any(|g| g.id() == id)
    }

    /// Scores the alphabet and stores the result.
    pub fn scored(mut self, stats: &CorpusStats, scoring: &Scoring) -> Result<Self, AlphabetError> {
        self.score = Some(alphabet_fitness(&self, stats, scoring)?);
        Ok(self)
    }

    pub fn with_score(mut self, score: Option<AlphabetScore>) -> Self {
        self.score = score;
        self
    }

    /// Exchanges the glyphs of two letters.
    pub fn swap(&mut self, a: char, b: char) -> Result<(), AlphabetError> {
        if !self.mapping.contains_key(&a) {
            return Err(AlphabetError::UnknownLetter(a));
        }
        if !self.mapping.contains_key(&b) {
            return Err(AlphabetError::UnknownLetter(b));
        }
        if a != b {
            let ga = self.mapping.remove(&a).expect("checked");
            let gb = self.mapping.insert(b, ga).expect("checked");
            self.mapping.insert(a, gb);
            self.score = None;
        }
        Ok(())
    }

    /// Puts `glyph` on `letter`, returning the glyph it displaces.
    pub fn replace(&mut self, letter: char, glyph: Glyph) -> Result<Glyph, AlphabetError> {
        if !self.mapping.contains_key(&letter) {
            return Err(AlphabetError::UnknownLetter(letter));
        }
        if let Some((&other, _)) = self.mapping.iter().find(|(&l, g)| l != letter && g.id() == glyph.id()) {
            return Err(AlphabetError::DuplicateGlyph {
                id: glyph.id().to_owned(),
                first: other,
                second: letter,
            });
        }
        let report = validate_glyph(&glyph);
        if !report.is_valid() {
            return Err(AlphabetError::InvalidGlyph { letter, report });
        }
        self.score = None;
        Ok(self.mapping.insert(letter, glyph).expect("checked"))
    }
}

fn check_coverage(letters: &BTreeSet<char>, stats: &CorpusStats) -> Result<(), AlphabetError> {
    let corpus: BTreeSet<char> = stats.letters().iter().copied().collect();
    if *letters == corpus {
        return Ok(());
    }
    Err(AlphabetError::Coverage {
        missing: corpus.difference(letters).copied().collect(),
        extra: letters.difference(&corpus).copied().collect(),
    })
}

/// `Σ E(g_i, g_j) P(i, j)` over the corpus bigram table. The table is
/// renormalized by its own mass, so a table of pure `E = 1` pairs scores
/// exactly 1. An empty table scores 0.
pub fn connection_score(a: &Alphabet, stats: &CorpusStats) -> Result<f64, AlphabetError> {
    let mut connected = 0.0;
    let mut mass = 0.0;
    for (&(i, j), &p) in stats.bigram_prob() {
        let gi = a.glyph(i).ok_or(AlphabetError::MissingGlyph(i))?;
        let gj = a.glyph(j).ok_or(AlphabetError::MissingGlyph(j))?;
        mass += p;
        if gi.end_anchor() == gj.start_anchor() {
            connected += p;
        }
    }
    Ok(if mass > 0.0 { (connected / mass).min(1.0) } else { 0.0 })
}

/// Pairwise data for a fixed set of glyph profiles, shared by every scorer.
struct ScoreKernel<'a> {
    letters: &'a [char],
    stats: &'a CorpusStats,
    scoring: &'a Scoring,
    profiles: &'a [GlyphProfile],
}

impl ScoreKernel<'_> {
    /// `assignment[k]` is the profile index used for `letters[k]`.
    fn score(&self, assignment: &[usize]) -> AlphabetScore {
        let n = self.letters.len();
        let w = &self.scoring.alphabet;
        let bonus = self.scoring.metrics.anchor_bonus;
        let fit = |k: usize| self.profiles[assignment[k]].metrics.fitness;

        let sum_fitness: f64 = (0..n).map(fit).sum();
        let mut sum_dissimilarity = 0.0;
        for i in 0..n {
            for j in i + 1..n {
                let (pi, pj) = (&self.profiles[assignment[i]], &self.profiles[assignment[j]]);
                sum_dissimilarity += pi.dissimilarity(pj, bonus);
            }
        }
        let freq_weighted_fitness: f64 = (0..n).map(|k| fit(k) * self.stats.freq(self.letters[k])).sum();

        let mut connected = 0.0;
        let mut mass = 0.0;
        for (&(a, b), &p) in self.stats.bigram_prob() {
            let (Ok(ia), Ok(ib)) = (self.letters.binary_search(&a), self.letters.binary_search(&b)) else {
                continue;
            };
            mass += p;
            if self.profiles[assignment[ia]].end_anchor == self.profiles[assignment[ib]].start_anchor {
                connected += p;
            }
        }
        let connection_score = if mass > 0.0 { (connected / mass).min(1.0) } else { 0.0 };

        let pairs = n * (n.saturating_sub(1)) / 2;
        let mean_fitness = sum_fitness / n as f64;
        let mean_dissimilarity = if pairs > 0 {
            sum_dissimilarity / pairs as f64
        } else {
            0.0
        };
        let total = w.fitness * mean_fitness
            + w.dissimilarity * mean_dissimilarity
            + w.frequency * freq_weighted_fitness
            + w.connection * connection_score;
        AlphabetScore {
            letters: n,
            sum_fitness,
            sum_dissimilarity,
            freq_weighted_fitness,
            connection_score,
            mean_fitness,
            mean_dissimilarity,
            total,
        }
    }
}

/// Scores an alphabet against corpus statistics. Letters are always visited
/// in code-point order, so the result does not depend on insertion order.
pub fn alphabet_fitness(a: &Alphabet, stats: &CorpusStats, scoring: &Scoring) -> Result<AlphabetScore, AlphabetError> {
    let profiles = a
        .mapping
        .values()
        .map(|g| scoring.profile(g))
        .collect::<Result<Vec<_>, _>>()?;
    score_with_profiles(a, &profiles, stats, scoring)
}

/// Like [`alphabet_fitness`] but with precomputed profiles, one per letter
/// in code-point order.
pub fn score_with_profiles(
    a: &Alphabet,
    profiles: &[GlyphProfile],
    stats: &CorpusStats,
    scoring: &Scoring,
) -> Result<AlphabetScore, AlphabetError> {
    let letters: Vec<char> = a.letters().collect();
    check_coverage(&letters.iter().copied().collect(), stats)?;
    assert_eq!(profiles.len(), letters.len(), "one profile per letter");
    let kernel = ScoreKernel {
        letters: &letters,
        stats,
        scoring,
        profiles,
    };
    let identity: Vec<usize> = (0..letters.len()).collect();
    Ok(kernel.score(&identity))
}

fn check_pool(pool: &[Glyph], needed: usize) -> Result<(), AlphabetError> {
    if pool.len() < needed {
        return Err(AlphabetError::PoolTooSmall {
            needed,
            have: pool.len(),
        });
    }
    let mut ids = BTreeSet::new();
    for g in pool {
        if !ids.insert(g.id()) {
            return Err(AlphabetError::DuplicatePoolId(g.id().to_owned()));
        }
    }
    Ok(())
}

/// Puts the fittest glyphs on the most frequent letters.
///
/// Letters are ordered by descending frequency (ties by code point) and
/// glyphs by descending fitness (ties by id); the two lists are zipped.
pub fn assign_greedy(pool: &[Glyph], stats: &CorpusStats, scoring: &Scoring) -> Result<Alphabet, AlphabetError> {
    let letters = stats.letters_by_frequency();
    check_pool(pool, letters.len())?;
    let mut ranked = pool
        .iter()
        .map(|g| Ok((scoring.profile(g)?.metrics.fitness, g)))
        .collect::<Result<Vec<_>, AlphabetError>>()?;
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.id().cmp(b.1.id())));
    Alphabet::new(
        letters
            .into_iter()
            .zip(ranked)
            .map(|(l, (_, g))| (l, g.clone()))
            .collect(),
    )
}

/// Best injective assignment by full enumeration.
///
/// Assignments are visited in lexicographic order of the pool indices given
/// to the letters (in code-point order); the first maximum wins.
pub fn assign_exhaustive(pool: &[Glyph], stats: &CorpusStats, scoring: &Scoring) -> Result<Alphabet, AlphabetError> {
    let letters: Vec<char> = stats.letters().to_vec();
    if letters.len() > EXHAUSTIVE_MAX_LETTERS || pool.len() > EXHAUSTIVE_MAX_POOL {
        return Err(AlphabetError::TooLarge {
            letters: letters.len(),
            pool: pool.len(),
        });
    }
    check_pool(pool, letters.len())?;
    let profiles = pool.iter().map(|g| scoring.profile(g)).collect::<Result<Vec<_>, _>>()?;
    let kernel = ScoreKernel {
        letters: &letters,
        stats,
        scoring,
        profiles: &profiles,
    };

    let mut best: Option<(f64, Vec<usize>)> = None;
    let mut current = Vec::with_capacity(letters.len());
    let mut used = vec![false; pool.len()];
    enumerate(&kernel, pool.len(), &mut current, &mut used, &mut best);
    let (_, assignment) = best.expect("pool is large enough for at least one assignment");
    Alphabet::new(
        letters
            .iter()
            .zip(assignment)
            .map(|(&l, i)| (l, pool[i].clone()))
            .collect(),
    )
}

fn enumerate(
    kernel: &ScoreKernel<'_>,
    pool_len: usize,
    current: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<(f64, Vec<usize>)>,
) {
    if current.len() == kernel.letters.len() {
        let total = kernel.score(current).total;
        if best.as_ref().is_none_or(|(b, _)| total > *b) {
            *best = Some((total, current.clone()));
        }
        return;
    }
    for i in 0..pool_len {
        if used[i] {
            continue;
        }
        used[i] = true;
        current.push(i);
        enumerate(kernel, pool_len, current, used, best);
        current.pop();
        used[i] = false;
    }
}

/// On-disk form of an alphabet.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphabetDocument {
    pub letters: BTreeMap<char, Glyph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub score: Option<AlphabetScore>,
    #[serde(default)]
    pub weights: Scoring,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corpus_digest: Option<String>,
}

impl AlphabetDocument {
    pub fn new(alphabet: &Alphabet, scoring: &Scoring, stats: Option<&CorpusStats>) -> Self {
        AlphabetDocument {
            letters: alphabet.mapping.clone(),
            score: alphabet.score,
            weights: scoring.clone(),
            corpus_digest: stats.map(CorpusStats::digest),
        }
    }

    pub fn alphabet(&self) -> Result<Alphabet, AlphabetError> {
        Ok(Alphabet::new(self.letters.clone())?.with_score(self.score))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::analyze_corpus;
    use crate::geometry::Point;
    use crate::glyph::{generate_glyph, AnchorLevel, GlyphConfig};

    fn line(id: &str, start: u8, end: u8) -> Glyph {
        Glyph::polygonal(
            id,
            AnchorLevel::new(start).unwrap(),
            AnchorLevel::new(end).unwrap(),
            &[],
        )
        .unwrap()
    }

    fn aab() -> CorpusStats {
        analyze_corpus("aab".chars(), "ab".chars()).unwrap()
    }

    #[test]
    fn duplicate_ids_are_rejected() {
        let err = Alphabet::from_pairs([('a', line("x", 0, 0)), ('b', line("x", 1, 1))]).unwrap_err();
        assert!(matches!(
            err,
            AlphabetError::DuplicateGlyph {
                first: 'a',
                second: 'b',
                ..
            }
        ));
    }

    #[test]
    fn connection_score_toy_cases() {
        let stats = aab();
        let shared = Alphabet::from_pairs([('a', line("a", 1, 1)), ('b', line("b", 1, 1))]).unwrap();
        assert_eq!(connection_score(&shared, &stats).unwrap(), 1.0);
        let toy = Alphabet::from_pairs([('a', line("a", 0, 0)), ('b', line("b", 2, 1))]).unwrap();
        assert_eq!(connection_score(&toy, &stats).unwrap(), 0.5);
        let partial = Alphabet::from_pairs([('a', line("a", 0, 0))]).unwrap();
        assert_eq!(
            connection_score(&partial, &stats),
            Err(AlphabetError::MissingGlyph('b'))
        );
    }

    #[test]
    fn single_letter_alphabet() {
        let stats = analyze_corpus("aaa".chars(), "a".chars()).unwrap();
        let g = generate_glyph(3, &GlyphConfig::default()).unwrap();
        let a = Alphabet::from_pairs([('a', g.clone())]).unwrap();
        let scoring = Scoring::default();
        let s = alphabet_fitness(&a, &stats, &scoring).unwrap();
        let f = scoring.profile(&g).unwrap().metrics.fitness;
        let c = connection_score(&a, &stats).unwrap();
        assert_eq!(s.sum_dissimilarity, 0.0);
        assert!((s.total - (f + f + c)).abs() < 1e-15);
    }

    #[test]
    fn duplicated_shape_contributes_no_dissimilarity() {
        let stats = aab();
        let g = generate_glyph(9, &GlyphConfig::default()).unwrap();
        let a = Alphabet::from_pairs([('a', g.clone().with_id("one")), ('b', g.with_id("two"))]).unwrap();
        let s = alphabet_fitness(&a, &stats, &Scoring::default()).unwrap();
        assert_eq!(s.sum_dissimilarity, 0.0);
    }

    #[test]
    fn coverage_mismatch_names_letters() {
        let stats = aab();
        let a = Alphabet::from_pairs([('a', line("a", 0, 0)), ('c', line("c", 0, 0))]).unwrap();
        assert_eq!(
            alphabet_fitness(&a, &stats, &Scoring::default()),
            Err(AlphabetError::Coverage {
                missing: vec!['b'],
                extra: vec!['c']
            })
        );
    }

    #[test]
    fn greedy_puts_fittest_on_most_frequent() {
        let stats = analyze_corpus("aaab b c".chars(), "abc".chars()).unwrap();
        let simple = line("s", 0, 0);
        let one = Glyph::polygonal("m", AnchorLevel::LOW, AnchorLevel::LOW, &[Point::new(0.5, 0.4)]).unwrap();
        let two = Glyph::polygonal(
            "c",
            AnchorLevel::LOW,
            AnchorLevel::LOW,
            &[Point::new(0.3, 0.9), Point::new(0.6, 0.1)],
        )
        .unwrap();
        let a = assign_greedy(&[two, one, simple], &stats, &Scoring::default()).unwrap();
        assert_eq!(a.glyph('a').unwrap().id(), "s");
        assert_eq!(a.glyph('b').unwrap().id(), "m");
        assert_eq!(a.glyph('c').unwrap().id(), "c");
    }

    #[test]
    fn greedy_ties_follow_letter_code() {
        let stats = analyze_corpus("ab".chars(), "ab".chars()).unwrap();
        let p = Glyph::polygonal("p", AnchorLevel::LOW, AnchorLevel::LOW, &[Point::new(0.5, 0.4)]).unwrap();
        let q = line("q", 0, 0);
        let a = assign_greedy(&[p, q], &stats, &Scoring::default()).unwrap();
        assert_eq!(a.glyph('a').unwrap().id(), "q");
        assert_eq!(a.glyph('b').unwrap().id(), "p");
    }

    #[test]
    fn pool_errors() {
        let stats = aab();
        assert_eq!(
            assign_greedy(&[line("a", 0, 0)], &stats, &Scoring::default()),
            Err(AlphabetError::PoolTooSmall { needed: 2, have: 1 })
        );
        let pool: Vec<Glyph> = (0..11).map(|i| line(&format!("g{i}"), 0, 0)).collect();
        assert!(matches!(
            assign_exhaustive(&pool, &stats, &Scoring::default()),
            Err(AlphabetError::TooLarge { .. })
        ));
    }

    #[test]
    fn exhaustive_trivial_and_tie_cases() {
        let stats = analyze_corpus("a".chars(), "a".chars()).unwrap();
        let g = line("only", 1, 1);
        let a = assign_exhaustive(std::slice::from_ref(&g), &stats, &Scoring::default()).unwrap();
        assert_eq!(a.glyph('a'), Some(&g));

        let stats = analyze_corpus("a b".chars(), "ab".chars()).unwrap();
        let pool = [line("x", 0, 0), line("y", 0, 0)];
        let a = assign_exhaustive(&pool, &stats, &Scoring::default()).unwrap();
        assert_eq!(a.glyph('a').unwrap().id(), "x");
        assert_eq!(a.glyph('b').unwrap().id(), "y");
    }

    #[test]
    fn exhaustive_matches_direct_scoring() {
        let stats = analyze_corpus("abacab cab".chars(), "abc".chars()).unwrap();
        let pool: Vec<Glyph> = (0..5)
            .map(|s| generate_glyph(s, &GlyphConfig::default()).unwrap())
            .collect();
        let scoring = Scoring::default();
        let best = assign_exhaustive(&pool, &stats, &scoring).unwrap();
        let best_total = alphabet_fitness(&best, &stats, &scoring).unwrap().total;
        for i in 0..5 {
            for j in 0..5 {
                for k in 0..5 {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let a =
                        Alphabet::from_pairs([('a', pool[i].clone()), ('b', pool[j].clone()), ('c', pool[k].clone())])
                            .unwrap();
                    assert!(alphabet_fitness(&a, &stats, &scoring).unwrap().total <= best_total);
                }
            }
        }
    }

    #[test]
    fn swap_and_replace() {
        let mut a = Alphabet::from_pairs([('a', line("x", 0, 0)), ('b', line("y", 1, 2))]).unwrap();
        a.swap('a', 'b').unwrap();
        assert_eq!(a.glyph('a').unwrap().id(), "y");
        assert_eq!(a.swap('a', 'z'), Err(AlphabetError::UnknownLetter('z')));
        assert!(a.replace('a', line("x", 0, 0)).is_err());
        let old = a.replace('a', line("w", 0, 0)).unwrap();
        assert_eq!(old.id(), "y");
    }

    #[test]
    fn document_round_trip() {
        let stats = aab();
        let scoring = Scoring::default();
        let a = Alphabet::from_pairs([('a', line("x", 0, 0)), ('b', line("y", 1, 2))])
            .unwrap()
            .scored(&stats, &scoring)
            .unwrap();
        let doc = AlphabetDocument::new(&a, &scoring, Some(&stats));
        let json = serde_json::to_string(&doc).unwrap();
        let back: AlphabetDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back.alphabet().unwrap(), a);
        assert_eq!(back.corpus_digest, Some(stats.digest()));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert!(v["letters"]["a"]["segments"].is_array());
        assert!(v["score"]["total"].is_number());
        assert!(v["weights"]["alphabet"]["connection"].is_number());
    }
}
