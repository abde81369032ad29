// Copyright 2026 the Scriptsmith Authors
// SPDX-License-Identifier: Apache-2.0

//! Letter and bigram statistics of a source text.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CorpusError {
    #[error("letter set is empty")]
    EmptyLetterSet,
    #[error("letter `{0}` appears more than once in the letter set")]
    DuplicateLetter(char),
    #[error("corpus contains no letters from the letter set")]
    EmptyCorpus,
    #[error("bigram key `{0}` must be exactly two letters")]
    BadBigramKey(String),
    #[error("letter `{0}` is used in the statistics but not in the letter set")]
    UnknownLetter(char),
}

/// Letter frequencies `p_i` and joint probabilities of adjacent in-word
/// letter pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusStats {
    letters: Vec<char>,
    letter_freq: BTreeMap<char, f64>,
    bigram_prob: BTreeMap<(char, char), f64>,
    total_letters: u64,
    total_bigrams: u64,
}

fn fold(c: char) -> char {
    let mut lower = c.to_lowercase();
    match (lower.next(), lower.next()) {
        (Some(l), None) => l,
        _ => c,
    }
}

/// Lowercases, checks uniqueness and sorts a letter set.
pub fn normalize_letter_set(letters: impl IntoIterator<Item = char>) -> Result<Vec<char>, CorpusError> {
    let mut set: Vec<char> = letters.into_iter().map(fold).collect();
    if set.is_empty() {
        return Err(CorpusError::EmptyLetterSet);
    }
    set.sort_unstable();
    if let Some(w) = set.windows(2).find(|w| w[0] == w[1]) {
        return Err(CorpusError::DuplicateLetter(w[0]));
    }
    Ok(set)
}

/// Single pass over `text`. Characters outside the letter set end the
/// current word; bigrams never span two words.
pub fn analyze_corpus(
    text: impl IntoIterator<Item = char>,
    letters: impl IntoIterator<Item = char>,
) -> Result<CorpusStats, CorpusError> {
    let letters = normalize_letter_set(letters)?;
    let mut counts: BTreeMap<char, u64> = letters.iter().map(|&c| (c, 0)).collect();
    let mut pairs: BTreeMap<(char, char), u64> = BTreeMap::new();
    let mut prev: Option<char> = None;
    for c in text {
        let c = fold(c);
        match counts.get_mut(&c) {
            Some(n) => {
                *n += 1;
                if let Some(p) = prev {
                    *pairs.entry((p, c)).or_insert(0) += 1;
                }
                prev = Some(c);
            }
            None => prev = None,
        }
    }
    let total_letters: u64 = counts.values().sum();
    if total_letters == 0 {
        return Err(CorpusError::EmptyCorpus);
    }
    let total_bigrams: u64 = pairs.values().sum();
    let letter_freq = counts
        .iter()
        .map(|(&c, &n)| (c, n as f64 / total_letters as f64))
        .collect();
    let bigram_prob = pairs
        .iter()
        .map(|(&k, &n)| (k, n as f64 / total_bigrams as f64))
        .collect();
    Ok(CorpusStats {
        letters,
        letter_freq,
        bigram_prob,
        total_letters,
        total_bigrams,
    })
}

impl CorpusStats {
    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn contains(&self, c: char) -> bool {
        self.letter_freq.contains_key(&c)
    }

    /// `p_i`; zero for letters outside the set.
    pub fn freq(&self, c: char) -> f64 {
        self.letter_freq.get(&c).copied().unwrap_or(0.0)
    }

    pub fn letter_freq(&self) -> &BTreeMap<char, f64> {
        &self.letter_freq
    }

    /// Joint probability that `a` is immediately followed by `b` inside a word.
    pub fn bigram(&self, a: char, b: char) -> f64 {
        self.bigram_prob.get(&(a, b)).copied().unwrap_or(0.0)
    }

    /// Nonzero bigram probabilities, in lexicographic pair order.
    pub fn bigram_prob(&self) -> &BTreeMap<(char, char), f64> {
        &self.bigram_prob
    }

    pub fn total_letters(&self) -> u64 {
        self.total_letters
    }

    pub fn total_bigrams(&self) -> u64 {
        self.total_bigrams
    }

    /// The `k` most probable bigrams, ties in lexicographic order.
    pub fn top_bigrams(&self, k: usize) -> Vec<((char, char), f64)> {
        let mut all: Vec<_> = self.bigram_prob.iter().map(|(&pair, &p)| (pair, p)).collect();
        all.sort_by(|a, b| match b.1.total_cmp(&a.1) {
            Ordering::Equal => a.0.cmp(&b.0),
            other => other,
        });
        all.truncate(k);
        all
    }

    /// Letters by descending frequency, ties by code point.
    pub fn letters_by_frequency(&self) -> Vec<char> {
        let mut order = self.letters.clone();
        order.sort_by(|&a, &b| match self.freq(b).total_cmp(&self.freq(a)) {
            Ordering::Equal => a.cmp(&b),
            other => other,
        });
        order
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn digest(&self) -> String {
        let json = serde_json::to_vec(self).expect("corpus stats serialize");
        hex::encode(Sha256::digest(json))
    }
}

/// See [`CorpusStats::top_bigrams`].
pub fn top_bigrams(stats: &CorpusStats, k: usize) -> Vec<((char, char), f64)> {
    stats.top_bigrams(k)
}

#[derive(Serialize, Deserialize)]
struct StatsRecord {
    letters: Vec<char>,
    p: BTreeMap<char, f64>,
    bigram: BTreeMap<String, f64>,
    total_letters: u64,
    total_bigrams: u64,
}

impl Serialize for CorpusStats {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        StatsRecord {
            letters: self.letters.clone(),
            p: self.letter_freq.clone(),
            bigram: self
                .bigram_prob
                .iter()
                .map(|(&(a, b), &p)| (format!("{a}{b}"), p))
                .collect(),
            total_letters: self.total_letters,
            total_bigrams: self.total_bigrams,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CorpusStats {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let r = StatsRecord::deserialize(deserializer)?;
        CorpusStats::try_from(r).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<StatsRecord> for CorpusStats {
    type Error = CorpusError;
    fn try_from(r: StatsRecord) -> Result<Self, CorpusError> {
        let letters = normalize_letter_set(r.letters)?;
        let mut letter_freq = BTreeMap::new();
        for &c in &letters {
            letter_freq.insert(c, r.p.get(&c).copied().unwrap_or(0.0));
        }
        if let Some(&c) = r.p.keys().find(|c| !letter_freq.contains_key(c)) {
            return Err(CorpusError::UnknownLetter(c));
        }
        let mut bigram_prob = BTreeMap::new();
        for (key, p) in r.bigram {
            let mut chars = key.chars();
            let (Some(a), Some(b), None) = (chars.next(), chars.next(), chars.next()) else {
                return Err(CorpusError::BadBigramKey(key));
            };
            for c in [a, b] {
                if !letter_freq.contains_key(&c) {
                    return Err(CorpusError::UnknownLetter(c));
                }
            }
            bigram_prob.insert((a, b), p);
        }
        Ok(CorpusStats {
            letters,
            letter_freq,
            bigram_prob,
            total_letters: r.total_letters,
            total_bigrams: r.total_bigrams,
        })
    }
}
