// Copyright 2026 the Scriptsmith Authors
// SPDX-License-Identifier: Apache-2.0

//! Genetic search over whole alphabets.
//!
//! Each generation keeps the `elitism_count` best alphabets in place and
//! refills every other slot with a mutated tournament winner. All randomness
//! comes from seeds derived from `config.seed`, the generation number and the
//! slot index (see [`crate::rng`]), so a run is reproducible bit for bit and
//! the parallel scoring pass cannot influence it.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, RngCore};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alphabet::{alphabet_fitness, assign_greedy, Alphabet, AlphabetDocument, AlphabetError, Scoring};
use crate::corpus::CorpusStats;
use crate::glyph::{generate_glyph, mutate_glyph, Glyph, GlyphConfig, GlyphError, GlyphMutation, MutationOutcome};
use crate::rng::{derive_seed, derived_rng, rng_from_seed};

const INIT_LABEL: u64 = 0x1;
const GENERATION_LABEL: u64 = 0x2;

#[derive(Debug, Error)]
pub enum EvolveError {
    #[error("invalid evolution config `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("initial population has {got} alphabets, config expects {expected}")]
    PopulationSize { expected: usize, got: usize },
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
    #[error(transparent)]
    Glyph(#[from] GlyphError),
    #[error("thread pool: {0}")]
    Threads(String),
}

fn config_error(field: impl Into<String>, message: impl Into<String>) -> EvolveError {
    EvolveError::Config {
        field: field.into(),
        message: message.into(),
    }
}

/// Every mutation operator the search can apply to an alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MutationOp {
    AddPoint,
    RemovePoint,
    MovePoint,
    MirrorX,
    MirrorY,
    SwapAssignment,
    ReplaceGlyph,
}

impl MutationOp {
    pub const ALL: [MutationOp; 7] = [
        MutationOp::AddPoint,
        MutationOp::RemovePoint,
        MutationOp::MovePoint,
        MutationOp::MirrorX,
        MutationOp::MirrorY,
        MutationOp::SwapAssignment,
        MutationOp::ReplaceGlyph,
    ];

    fn glyph_mutation(self) -> Option<GlyphMutation> {
        match self {
            MutationOp::AddPoint => Some(GlyphMutation::AddPoint),
            MutationOp::RemovePoint => Some(GlyphMutation::RemovePoint),
            MutationOp::MovePoint => Some(GlyphMutation::MovePoint),
            MutationOp::MirrorX => Some(GlyphMutation::MirrorX),
            MutationOp::MirrorY => Some(GlyphMutation::MirrorY),
            MutationOp::SwapAssignment | MutationOp::ReplaceGlyph => None,
        }
    }
}

/// Per-child probability of applying each operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MutationRates {
    pub add_point: f64,
    pub remove_point: f64,
    pub move_point: f64,
    pub mirror_x: f64,
    pub mirror_y: f64,
    pub swap_assignment: f64,
    pub replace_glyph: f64,
}

impl Default for MutationRates {
    fn default() -> Self {
        MutationRates {
            add_point: 0.1,
            remove_point: 0.1,
            move_point: 0.4,
            mirror_x: 0.05,
            mirror_y: 0.05,
            swap_assignment: 0.3,
            replace_glyph: 0.1,
        }
    }
}

impl MutationRates {
    /// Only `op` enabled, at `rate`.
    pub fn only(op: MutationOp, rate: f64) -> Self {
        let mut r = MutationRates::none();
        *r.rate_mut(op) = rate;
        r
    }

    pub fn none() -> Self {
        MutationRates {
            add_point: 0.0,
            remove_point: 0.0,
            move_point: 0.0,
            mirror_x: 0.0,
            mirror_y: 0.0,
            swap_assignment: 0.0,
            replace_glyph: 0.0,
        }
    }

    pub fn rate(&self, op: MutationOp) -> f64 {
        match op {
            MutationOp::AddPoint => self.add_point,
            MutationOp::RemovePoint => self.remove_point,
            MutationOp::MovePoint => self.move_point,
            MutationOp::MirrorX => self.mirror_x,
            MutationOp::MirrorY => self.mirror_y,
            MutationOp::SwapAssignment => self.swap_assignment,
            MutationOp::ReplaceGlyph => self.replace_glyph,
        }
    }

    pub fn rate_mut(&mut self, op: MutationOp) -> &mut f64 {
        match op {
            MutationOp::AddPoint => &mut self.add_point,
            MutationOp::RemovePoint => &mut self.remove_point,
            MutationOp::MovePoint => &mut self.move_point,
            MutationOp::MirrorX => &mut self.mirror_x,
            MutationOp::MirrorY => &mut self.mirror_y,
            MutationOp::SwapAssignment => &mut self.swap_assignment,
            MutationOp::ReplaceGlyph => &mut self.replace_glyph,
        }
    }

    fn any_enabled(&self) -> bool {
        MutationOp::ALL.iter().any(|&op| self.rate(op) > 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolutionConfig {
    pub seed: u64,
    pub population_size: usize,
    pub generations: usize,
    pub elitism_count: usize,
    pub tournament_size: usize,
    pub mutation_rates: MutationRates,
    /// Uniform assignment crossover between two tournament winners.
    pub crossover: bool,
    /// Stop after this many generations without a new best.
    pub stagnation_limit: Option<usize>,
    /// Snapshot the population every this many generations.
    pub checkpoint_every: Option<usize>,
    pub scoring: Scoring,
    pub glyph: GlyphConfig,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        EvolutionConfig {
            seed: 0,
            population_size: 64,
            generations: 200,
            elitism_count: 2,
            tournament_size: 3,
            mutation_rates: MutationRates::default(),
            crossover: false,
            stagnation_limit: None,
            checkpoint_every: None,
            scoring: Scoring::default(),
            glyph: GlyphConfig::default(),
        }
    }
}

impl EvolutionConfig {
    pub fn validate(&self) -> Result<(), EvolveError> {
        if self.population_size == 0 {
            return Err(config_error("population_size", "must be positive"));
        }
        if self.elitism_count >= self.population_size {
            return Err(config_error(
                "elitism_count",
                format!(
                    "must be smaller than population_size ({}), got {}",
                    self.population_size, self.elitism_count
                ),
            ));
        }
        if self.tournament_size < 2 {
            return Err(config_error(
                "tournament_size",
                format!("must be at least 2, got {}", self.tournament_size),
            ));
        }
        for op in MutationOp::ALL {
            let r = self.mutation_rates.rate(op);
            if !(0.0..=1.0).contains(&r) {
                let name = serde_json::to_value(op).expect("op serializes");
                return Err(config_error(
                    format!("mutation_rates.{}", name.as_str().unwrap_or_default()),
                    format!("must lie in [0, 1], got {r}"),
                ));
            }
        }
        if !self.mutation_rates.any_enabled() {
            return Err(config_error("mutation_rates", "at least one rate must be positive"));
        }
        if self.stagnation_limit == Some(0) {
            return Err(config_error("stagnation_limit", "must be positive when set"));
        }
        if self.checkpoint_every == Some(0) {
            return Err(config_error("checkpoint_every", "must be positive when set"));
        }
        self.scoring
            .validate()
            .map_err(|e| config_error("scoring", e.to_string()))?;
        self.glyph.validate().map_err(|e| match e {
            GlyphError::InvalidConfig { field, message } => config_error(format!("glyph.{field}"), message),
            other => config_error("glyph", other.to_string()),
        })?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct OpTally {
    pub applied: u64,
    pub skipped: u64,
}

/// How often each operator fired, and how often it had nothing to act on.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MutationCounts(BTreeMap<MutationOp, OpTally>);

impl MutationCounts {
    fn applied(&mut self, op: MutationOp) {
        self.0.entry(op).or_default().applied += 1;
    }

    fn skipped(&mut self, op: MutationOp) {
        self.0.entry(op).or_default().skipped += 1;
    }

    pub fn merge(&mut self, other: &MutationCounts) {
        for (op, t) in &other.0 {
            let e = self.0.entry(*op).or_default();
            e.applied += t.applied;
            e.skipped += t.skipped;
        }
    }

    pub fn get(&self, op: MutationOp) -> OpTally {
        self.0.get(&op).copied().unwrap_or_default()
    }

    pub fn total_applied(&self) -> u64 {
        self.0.values().map(|t| t.applied).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenerationRecord {
    pub generation: usize,
    /// Best total in this generation's population.
    pub best_total: f64,
    pub mean_total: f64,
    /// Best total seen so far, initial population included.
    pub best_ever_total: f64,
    pub mutations: MutationCounts,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionReport {
    pub seed: u64,
    pub config: EvolutionConfig,
    pub best: Alphabet,
    pub history: Vec<GenerationRecord>,
    pub stopped_early: bool,
}

impl EvolutionReport {
    pub fn best_total(&self) -> f64 {
        self.best.score().map_or(f64::NEG_INFINITY, |s| s.total)
    }

    pub fn to_document(&self, stats: &CorpusStats) -> ReportDocument {
        ReportDocument {
            seed: self.seed,
            generations_run: self.history.len(),
            stopped_early: self.stopped_early,
            best_total: self.best_total(),
            best: AlphabetDocument::new(&self.best, &self.config.scoring, Some(stats)),
            config: self.config.clone(),
            history: self.history.clone(),
        }
    }

    /// `generation,best,mean` rows with a header line.
    pub fn history_csv(&self) -> String {
        let mut out = String::from("generation,best,mean\n");
        for r in &self.history {
            out.push_str(&format!("{},{},{}\n", r.generation, r.best_total, r.mean_total));
        }
        out
    }
}

/// On-disk form of an [`EvolutionReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub seed: u64,
    pub generations_run: usize,
    pub stopped_early: bool,
    pub best_total: f64,
    pub best: AlphabetDocument,
    pub config: EvolutionConfig,
    pub history: Vec<GenerationRecord>,
}

/// A configured search over one corpus.
pub struct Evolution<'a> {
    config: EvolutionConfig,
    stats: &'a CorpusStats,
    letters: Vec<char>,
    pool: Option<Vec<Glyph>>,
    threads: Option<usize>,
}

impl<'a> Evolution<'a> {
    pub fn new(config: EvolutionConfig, stats: &'a CorpusStats) -> Result<Self, EvolveError> {
        config.validate()?;
        Ok(Evolution {
            letters: stats.letters().to_vec(),
            config,
            stats,
            pool: None,
            threads: None,
        })
    }

    /// Restricts the search to a fixed glyph pool: the initial population is
    /// drawn from it, `replace_glyph` substitutes an unused pool glyph, and
    /// `swap_assignment` may trade a letter's glyph for an unused one.
    pub fn with_pool(mut self, pool: Vec<Glyph>) -> Result<Self, EvolveError> {
        if pool.len() < self.letters.len() {
            return Err(AlphabetError::PoolTooSmall {
                needed: self.letters.len(),
                have: pool.len(),
            }
            .into());
        }
        let mut ids = BTreeSet::new();
        for g in &pool {
            if !ids.insert(g.id()) {
                return Err(AlphabetError::DuplicatePoolId(g.id().to_owned()).into());
            }
            g.clone().checked()?;
        }
        self.pool = Some(pool);
        Ok(self)
    }

    /// Caps the number of scoring threads.
    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = Some(threads.max(1));
        self
    }

    pub fn config(&self) -> &EvolutionConfig {
        &self.config
    }

    /// One alphabet per slot: fresh glyphs assigned greedily or, with a pool,
    /// a random injective draw from the pool.
    pub fn initial_population(&self) -> Result<Vec<Alphabet>, EvolveError> {
        let seed = self.config.seed;
        (0..self.config.population_size as u64)
            .map(|i| match &self.pool {
                Some(pool) => {
                    let mut rng = derived_rng(seed, &[INIT_LABEL, i]);
                    let mut order: Vec<usize> = (0..pool.len()).collect();
                    for k in 0..self.letters.len() {
                        let j = rng.random_range(k..order.len());
                        order.swap(k, j);
                    }
                    Ok(Alphabet::new(
                        self.letters
                            .iter()
                            .zip(&order)
                            .map(|(&l, &k)| (l, pool[k].clone()))
                            .collect(),
                    )?)
                }
                None => {
                    let glyphs = (0..self.letters.len() as u64)
                        .map(|j| generate_glyph(derive_seed(seed, &[INIT_LABEL, i, j]), &self.config.glyph))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(assign_greedy(&glyphs, self.stats, &self.config.scoring)?)
                }
            })
            .collect()
    }

    fn in_pool<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T, EvolveError> {
        match self.threads {
            None => Ok(f()),
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build()
                    .map_err(|e| EvolveError::Threads(e.to_string()))?;
                Ok(pool.install(f))
            }
        }
    }

    /// Scores every alphabet that does not already carry a score.
    pub fn evaluate(&self, population: Vec<Alphabet>) -> Result<Vec<Alphabet>, EvolveError> {
        let scoring = &self.config.scoring;
        let stats = self.stats;
        self.in_pool(move || {
            population
                .into_par_iter()
                .map(|a| match a.score() {
                    Some(_) => Ok(a),
                    None => a.scored(stats, scoring),
                })
                .collect::<Result<Vec<_>, _>>()
        })?
        .map_err(EvolveError::from)
    }

    /// Applies each operator with its configured probability.
    pub fn mutate_alphabet(&self, a: &Alphabet, rng: &mut impl RngCore) -> (Alphabet, MutationCounts) {
        let mut out = a.clone();
        let mut counts = MutationCounts::default();
        for op in MutationOp::ALL {
            let fire = rng.random::<f64>() < self.config.mutation_rates.rate(op);
            if !fire {
                continue;
            }
            if self.apply(&mut out, op, rng) {
                counts.applied(op);
            } else {
                counts.skipped(op);
            }
        }
        (out, counts)
    }

    fn unused_pool_glyphs<'p>(&self, pool: &'p [Glyph], a: &Alphabet) -> Vec<&'p Glyph> {
        pool.iter().filter(|g| !a.contains_id(g.id())).collect()
    }

    fn apply(&self, a: &mut Alphabet, op: MutationOp, rng: &mut impl RngCore) -> bool {
        let n = self.letters.len();
        if let Some(kind) = op.glyph_mutation() {
            let letter = self.letters[rng.random_range(0..n)];
            let current = a.glyph(letter).expect("alphabet covers its letters");
            return match mutate_glyph(current, kind, &self.config.glyph, rng) {
                MutationOutcome::Applied(g) => a.replace(letter, g).is_ok(),
                MutationOutcome::NotApplicable => false,
            };
        }
        match op {
            MutationOp::SwapAssignment => {
                let spare = match &self.pool {
                    Some(pool) => self.unused_pool_glyphs(pool, a),
                    None => Vec::new(),
                };
                let slots = n - 1 + spare.len();
                if slots == 0 {
                    return false;
                }
                let i = rng.random_range(0..n);
                let mut j = rng.random_range(0..slots);
                if j < n - 1 {
                    if j >= i {
                        j += 1;
                    }
                    a.swap(self.letters[i], self.letters[j]).is_ok()
                } else {
                    let g = spare[j - (n - 1)].clone();
                    a.replace(self.letters[i], g).is_ok()
                }
            }
            MutationOp::ReplaceGlyph => {
                let letter = self.letters[rng.random_range(0..n)];
                let fresh = match &self.pool {
                    Some(pool) => {
                        let spare = self.unused_pool_glyphs(pool, a);
                        if spare.is_empty() {
                            return false;
                        }
                        spare[rng.random_range(0..spare.len())].clone()
                    }
                    None => match generate_glyph(rng.next_u64(), &self.config.glyph) {
                        Ok(g) => g,
                        Err(_) => return false,
                    },
                };
                a.replace(letter, fresh).is_ok()
            }
            _ => unreachable!("glyph mutations handled above"),
        }
    }

    fn tournament(&self, totals: &[f64], rng: &mut impl RngCore) -> usize {
        let mut best = rng.random_range(0..totals.len());
        for _ in 1..self.config.tournament_size {
            let c = rng.random_range(0..totals.len());
            if totals[c] > totals[best] || (totals[c] == totals[best] && c < best) {
                best = c;
            }
        }
        best
    }

    // Uniform per-letter choice between parents; a glyph already taken falls
    // back to the other parent's glyph, then to any unused glyph of `a`.
    fn crossover(&self, a: &Alphabet, b: &Alphabet, rng: &mut impl RngCore) -> Alphabet {
        let mut used: BTreeSet<String> = BTreeSet::new();
        let mut picks: Vec<Option<Glyph>> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let (first, second) = if rng.random::<bool>() {
                (a.glyph(l), b.glyph(l))
            } else {
                (b.glyph(l), a.glyph(l))
            };
            let pick = [first, second]
                .into_iter()
                .flatten()
                .find(|g| !used.contains(g.id()))
                .cloned();
            if let Some(g) = &pick {
                used.insert(g.id().to_owned());
            }
            picks.push(pick);
        }
        let mut spare = a.mapping().values().filter(|g| !used.contains(g.id()));
        let mapping = self
            .letters
            .iter()
            .zip(picks)
            .map(|(&l, p)| {
                (
                    l,
                    p.unwrap_or_else(|| spare.next().expect("parent has enough glyphs").clone()),
                )
            })
            .collect();
        Alphabet::new(mapping).unwrap_or_else(|_| a.clone())
    }

    /// One selection and mutation round over a scored population.
    ///
    /// The `elitism_count` best alphabets (ties to the lower index) stay in
    /// their slots untouched; every other slot gets a fresh child seeded from
    /// `generation_seed` and the slot index. When no operator can fire the
    /// population is returned as is.
    pub fn step_generation(
        &self,
        population: &[Alphabet],
        generation_seed: u64,
    ) -> Result<(Vec<Alphabet>, MutationCounts), EvolveError> {
        if population.len() != self.config.population_size {
            return Err(EvolveError::PopulationSize {
                expected: self.config.population_size,
                got: population.len(),
            });
        }
        if !self.config.mutation_rates.any_enabled() && !self.config.crossover {
            return Ok((population.to_vec(), MutationCounts::default()));
        }
        let population = self.evaluate(population.to_vec())?;
        let totals: Vec<f64> = population.iter().map(|a| a.score().expect("scored").total).collect();
        let mut order: Vec<usize> = (0..totals.len()).collect();
        order.sort_by(|&i, &j| totals[j].total_cmp(&totals[i]).then(i.cmp(&j)));
        let mut elite = vec![false; totals.len()];
        for &i in order.iter().take(self.config.elitism_count) {
            elite[i] = true;
        }

        let mut counts = MutationCounts::default();
        let mut next = Vec::with_capacity(population.len());
        for (slot, is_elite) in elite.iter().enumerate() {
            if *is_elite {
                next.push(population[slot].clone());
                continue;
            }
            let mut rng = derived_rng(generation_seed, &[slot as u64]);
            let parent = self.tournament(&totals, &mut rng);
            let base = if self.config.crossover {
                let other = self.tournament(&totals, &mut rng);
                self.crossover(&population[parent], &population[other], &mut rng)
            } else {
                population[parent].clone()
            };
            let (child, c) = self.mutate_alphabet(&base, &mut rng);
            counts.merge(&c);
            next.push(child);
        }
        Ok((next, counts))
    }

    pub fn run(&self, initial: Option<Vec<Alphabet>>) -> Result<EvolutionReport, EvolveError> {
        self.run_with(initial, |_, _| {})
    }

    /// Runs the search, calling `observer(generation, population)` after every
    /// generation (and once with generation 0 for the initial population).
    pub fn run_with(
        &self,
        initial: Option<Vec<Alphabet>>,
        mut observer: impl FnMut(usize, &[Alphabet]),
    ) -> Result<EvolutionReport, EvolveError> {
        let population = match initial {
            Some(p) => {
                if p.len() != self.config.population_size {
                    return Err(EvolveError::PopulationSize {
                        expected: self.config.population_size,
                        got: p.len(),
                    });
                }
                p
            }
            None => self.initial_population()?,
        };
        let mut population = self.evaluate(population)?;
        observer(0, &population);
        let mut best = best_of(&population).clone();
        let mut best_total = best.score().expect("scored").total;
        let mut history = Vec::new();
        let mut since_improvement = 0;
        let mut stopped_early = false;

        for generation in 0..self.config.generations {
            let seed = derive_seed(self.config.seed, &[GENERATION_LABEL, generation as u64]);
            let (next, mutations) = self.step_generation(&population, seed)?;
            population = self.evaluate(next)?;
            let totals: Vec<f64> = population.iter().map(|a| a.score().expect("scored").total).collect();
            let gen_best = best_of(&population);
            let gen_best_total = gen_best.score().expect("scored").total;
            if gen_best_total > best_total {
                best = gen_best.clone();
                best_total = gen_best_total;
                since_improvement = 0;
            } else {
                since_improvement += 1;
            }
            history.push(GenerationRecord {
                generation: generation + 1,
                best_total: gen_best_total,
                mean_total: totals.iter().sum::<f64>() / totals.len() as f64,
                best_ever_total: best_total,
                mutations,
            });
            observer(generation + 1, &population);
            if self
                .config
                .stagnation_limit
                .is_some_and(|limit| since_improvement >= limit)
            {
                stopped_early = generation + 1 < self.config.generations;
                break;
            }
        }
        Ok(EvolutionReport {
            seed: self.config.seed,
            config: self.config.clone(),
            best,
            history,
            stopped_early,
        })
    }
}

fn best_of(population: &[Alphabet]) -> &Alphabet {
    let mut best = &population[0];
    for a in &population[1..] {
        if a.score().expect("scored").total > best.score().expect("scored").total {
            best = a;
        }
    }
    best
}

/// Runs a search with default threading and no fixed pool.
pub fn evolve(
    config: EvolutionConfig,
    stats: &CorpusStats,
    initial: Option<Vec<Alphabet>>,
) -> Result<EvolutionReport, EvolveError> {
    Evolution::new(config, stats)?.run(initial)
}

/// Scores a population outside a search, e.g. to compare with a report.
pub fn population_totals(
    population: &[Alphabet],
    stats: &CorpusStats,
    scoring: &Scoring,
) -> Result<Vec<f64>, AlphabetError> {
    population
        .iter()
        .map(|a| alphabet_fitness(a, stats, scoring).map(|s| s.total))
        .collect()
}

/// A fresh rng for callers that mutate outside a run.
pub fn mutation_rng(seed: u64) -> crate::rng::Rng {
    rng_from_seed(seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::analyze_corpus;
    use crate::glyph::{validate_glyph, AnchorLevel};

    fn stats() -> CorpusStats {
        analyze_corpus("the cat sat on the mat with a hat".chars(), "acehmnostw".chars()).unwrap()
    }

    fn small_config() -> EvolutionConfig {
        EvolutionConfig {
            seed: 5,
            population_size: 12,
            generations: 8,
            ..EvolutionConfig::default()
        }
    }

    #[test]
    fn config_errors_name_the_field() {
        let mut c = EvolutionConfig::default();
        c.mutation_rates.swap_assignment = 1.5;
        match c.validate() {
            Err(EvolveError::Config { field, .. }) => assert_eq!(field, "mutation_rates.swap_assignment"),
            other => panic!("{other:?}"),
        }
        let c = EvolutionConfig {
            elitism_count: 64,
            ..EvolutionConfig::default()
        };
        assert!(matches!(c.validate(), Err(EvolveError::Config { field, .. }) if field == "elitism_count"));
        let c = EvolutionConfig {
            mutation_rates: MutationRates::none(),
            ..EvolutionConfig::default()
        };
        assert!(matches!(c.validate(), Err(EvolveError::Config { field, .. }) if field == "mutation_rates"));
        let mut c = EvolutionConfig::default();
        c.glyph.max_points = 40;
        assert!(matches!(c.validate(), Err(EvolveError::Config { field, .. }) if field == "glyph.max_points"));
    }

    #[test]
    fn zero_generations_returns_best_initial() {
        let s = stats();
        let evo = Evolution::new(small_config(), &s).unwrap();
        let initial = evo.initial_population().unwrap();
        let cfg = EvolutionConfig {
            generations: 0,
            ..small_config()
        };
        let report = evolve(cfg, &s, Some(initial.clone())).unwrap();
        assert!(report.history.is_empty());
        let totals = population_totals(&initial, &s, &Scoring::default()).unwrap();
        let max = totals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(report.best_total(), max);
    }

    #[test]
    fn elites_keep_the_best_total_monotone() {
        let s = stats();
        let report = evolve(small_config(), &s, None).unwrap();
        assert_eq!(report.history.len(), 8);
        for w in report.history.windows(2) {
            assert!(w[1].best_total >= w[0].best_total);
        }
        let max = report
            .history
            .iter()
            .map(|r| r.best_total)
            .fold(f64::NEG_INFINITY, f64::max);
        assert_eq!(report.best_total(), max);
    }

    #[test]
    fn identity_steps() {
        let s = stats();
        let evo = Evolution::new(small_config(), &s).unwrap();
        let pop = evo.evaluate(evo.initial_population().unwrap()).unwrap();

        let all_elite = Evolution {
            config: EvolutionConfig {
                elitism_count: 12,
                ..small_config()
            },
            ..Evolution::new(small_config(), &s).unwrap()
        };
        assert_eq!(all_elite.step_generation(&pop, 1).unwrap().0, pop);

        let frozen = Evolution {
            config: EvolutionConfig {
                mutation_rates: MutationRates::none(),
                ..small_config()
            },
            ..Evolution::new(small_config(), &s).unwrap()
        };
        assert_eq!(frozen.step_generation(&pop, 1).unwrap().0, pop);
    }

    #[test]
    fn swap_on_two_letters_exchanges_glyphs() {
        let s = analyze_corpus("ab".chars(), "ab".chars()).unwrap();
        let cfg = EvolutionConfig {
            mutation_rates: MutationRates::only(MutationOp::SwapAssignment, 1.0),
            population_size: 4,
            ..EvolutionConfig::default()
        };
        let evo = Evolution::new(cfg, &s).unwrap();
        let a = evo.initial_population().unwrap().remove(0);
        let mut rng = mutation_rng(1);
        let (b, counts) = evo.mutate_alphabet(&a, &mut rng);
        assert_eq!(counts.get(MutationOp::SwapAssignment).applied, 1);
        assert!(b.glyph('a').unwrap().same_shape(a.glyph('b').unwrap()));
        assert!(b.glyph('b').unwrap().same_shape(a.glyph('a').unwrap()));
        let (c, _) = evo.mutate_alphabet(&b, &mut rng);
        assert_eq!(c.mapping(), a.mapping());
    }

    #[test]
    fn replace_keeps_alphabets_valid() {
        let s = stats();
        let cfg = EvolutionConfig {
            mutation_rates: MutationRates::only(MutationOp::ReplaceGlyph, 1.0),
            ..small_config()
        };
        let evo = Evolution::new(cfg, &s).unwrap();
        let mut a = evo.initial_population().unwrap().remove(0);
        let mut rng = mutation_rng(2);
        for _ in 0..1000 {
            a = evo.mutate_alphabet(&a, &mut rng).0;
            assert!(a.mapping().values().all(|g| validate_glyph(g).is_valid()));
        }
    }

    #[test]
    fn pool_swaps_reach_spare_glyphs() {
        let s = analyze_corpus("ab".chars(), "ab".chars()).unwrap();
        let pool: Vec<Glyph> = (0..4)
            .map(|i| Glyph::polygonal(format!("p{i}"), AnchorLevel::LOW, AnchorLevel::LOW, &[]).unwrap())
            .collect();
        let cfg = EvolutionConfig {
            mutation_rates: MutationRates::only(MutationOp::SwapAssignment, 1.0),
            population_size: 4,
            ..EvolutionConfig::default()
        };
        let evo = Evolution::new(cfg, &s).unwrap().with_pool(pool).unwrap();
        let mut a = evo.initial_population().unwrap().remove(0);
        let mut seen = BTreeSet::new();
        let mut rng = mutation_rng(3);
        for _ in 0..200 {
            a = evo.mutate_alphabet(&a, &mut rng).0;
            seen.extend(a.mapping().values().map(|g| g.id().to_owned()));
        }
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn runs_are_reproducible() {
        let s = stats();
        let a = evolve(small_config(), &s, None).unwrap();
        let b = Evolution::new(small_config(), &s)
            .unwrap()
            .with_threads(2)
            .run(None)
            .unwrap();
        let ja = serde_json::to_string(&a.to_document(&s)).unwrap();
        let jb = serde_json::to_string(&b.to_document(&s)).unwrap();
        assert_eq!(ja, jb);
    }

    #[test]
    fn crossover_produces_valid_children() {
        let s = stats();
        let cfg = EvolutionConfig {
            crossover: true,
            ..small_config()
        };
        let report = evolve(cfg, &s, None).unwrap();
        assert_eq!(report.best.len(), s.letters().len());
    }

    #[test]
    fn stagnation_stops_early() {
        let s = analyze_corpus("ab".chars(), "ab".chars()).unwrap();
        let pool: Vec<Glyph> = (0..2)
            .map(|i| Glyph::polygonal(format!("p{i}"), AnchorLevel::LOW, AnchorLevel::LOW, &[]).unwrap())
            .collect();
        let cfg = EvolutionConfig {
            population_size: 4,
            generations: 50,
            stagnation_limit: Some(3),
            mutation_rates: MutationRates::only(MutationOp::SwapAssignment, 1.0),
            ..EvolutionConfig::default()
        };
        let report = Evolution::new(cfg, &s)
            .unwrap()
            .with_pool(pool)
            .unwrap()
            .run(None)
            .unwrap();
        assert_eq!(report.history.len(), 3);
        assert!(report.stopped_early);
    }
}
