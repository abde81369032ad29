// Copyright 2026 the Scriptsmith Authors
// SPDX-License-Identifier: Apache-2.0

//! The `scriptsmith` command line.
//!
//! Every command is deterministic: randomness comes only from `--seed`, and
//! JSON output is written with keys in a fixed order.

use std::cell::RefCell;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::alphabet::{alphabet_fitness, Alphabet, AlphabetDocument, Scoring};
use crate::corpus::{analyze_corpus, CorpusStats};
use crate::evolve::{Evolution, EvolutionConfig, MutationRates};
use crate::glyph::{generate_glyph, Glyph, GlyphConfig};
use crate::render::{render_alphabet, render_glyph, render_word, RenderOptions, SheetOptions, SheetOrder};
use crate::rng::derive_seed;

#[derive(Debug, Parser)]
#[command(
    name = "scriptsmith",
    version,
    about = "Generate, score and evolve writing-system alphabets"
)]
pub struct Cli {
    /// Seed for every random choice. Required by `generate` and `evolve`.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// TOML file with `[glyph]`, `[scoring]` and `[evolution]` sections.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output file (a directory for `evolve`). Defaults to standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Suppress summaries on standard output.
    #[arg(long, short, global = true)]
    pub quiet: bool,
    /// Maximum number of scoring threads.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count letter and bigram frequencies of a text file.
    Analyze(AnalyzeArgs),
    /// Write a pool of random glyphs.
    Generate(GenerateArgs),
    /// Search for a high-scoring alphabet.
    Evolve(EvolveArgs),
    /// Score an alphabet against corpus statistics.
    Eval(EvalArgs),
    /// Draw a glyph, an alphabet sheet or a word as SVG.
    Render(RenderArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// UTF-8 text file.
    pub input: PathBuf,
    /// Letters to count; everything else separates words.
    #[arg(long, default_value = "abcdefghijklmnopqrstuvwxyz")]
    pub letters: String,
    /// Number of bigrams in the printed summary.
    #[arg(long, default_value_t = 5)]
    pub top: usize,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, short = 'n', default_value_t = 1)]
    pub count: usize,
}

#[derive(Debug, Args)]
pub struct EvolveArgs {
    /// Corpus statistics written by `analyze`.
    #[arg(long)]
    pub corpus: PathBuf,
    /// Glyph pool written by `generate`; the search then only uses these glyphs.
    #[arg(long)]
    pub init: Option<PathBuf>,
    #[arg(long)]
    pub generations: Option<usize>,
    #[arg(long)]
    pub population: Option<usize>,
    #[arg(long)]
    pub elitism: Option<usize>,
    #[arg(long)]
    pub tournament: Option<usize>,
    #[arg(long)]
    pub crossover: Option<bool>,
    #[arg(long)]
    pub stagnation_limit: Option<usize>,
    #[arg(long)]
    pub checkpoint_every: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long)]
    pub alphabet: PathBuf,
    #[arg(long)]
    pub corpus: PathBuf,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("what").required(true).args(["glyph", "sheet", "word"])))]
pub struct RenderArgs {
    #[arg(long)]
    pub alphabet: PathBuf,
    /// Render the glyph of one letter.
    #[arg(long)]
    pub glyph: Option<char>,
    /// Render every letter on a grid.
    #[arg(long)]
    pub sheet: bool,
    /// Render a word with connectors between non-matching anchors.
    #[arg(long)]
    pub word: Option<String>,
    /// Order sheet cells by the letter frequencies in these statistics.
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// Label sheet cells with glyph fitness.
    #[arg(long)]
    pub annotate: bool,
    #[arg(long)]
    pub columns: Option<usize>,
    #[arg(long)]
    pub cell_size: Option<f64>,
    #[arg(long)]
    pub unit_box: bool,
    #[arg(long)]
    pub control_points: bool,
}

/// Values read from `--config`. Anything missing keeps its default.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigFile {
    pub glyph: Option<GlyphConfig>,
    pub scoring: Option<Scoring>,
    pub evolution: EvolutionSection,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EvolutionSection {
    pub seed: Option<u64>,
    pub population_size: Option<usize>,
    pub generations: Option<usize>,
    pub elitism_count: Option<usize>,
    pub tournament_size: Option<usize>,
    pub mutation_rates: Option<MutationRates>,
    pub crossover: Option<bool>,
    pub stagnation_limit: Option<usize>,
    pub checkpoint_every: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        toml::from_str(&text).with_context(|| format!("invalid config {}", path.display()))
    }
}

/// Parses `args` (program name first) and runs the command, writing
/// summaries to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    execute(&cli, out)
}

/// Entry point for the binary. Returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let config = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    match &cli.command {
        Command::Analyze(a) => cmd_analyze(cli, a, out),
        Command::Generate(a) => cmd_generate(cli, &config, a, out),
        Command::Evolve(a) => cmd_evolve(cli, &config, a, out),
        Command::Eval(a) => cmd_eval(cli, &config, a, out),
        Command::Render(a) => cmd_render(cli, &config, a, out),
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path, what: &str) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {what} {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("invalid {what} {}", path.display()))
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("cannot write {}", path.display()))
}

/// Writes `contents` to `--output`, or to `out` when no path was given.
fn emit(cli: &Cli, contents: &str, out: &mut dyn Write) -> Result<bool> {
    match &cli.output {
        Some(p) => {
            write_file(p, contents)?;
            Ok(true)
        }
        None => {
            out.write_all(contents.as_bytes())?;
            Ok(false)
        }
    }
}

fn require_seed(cli: &Cli, config: Option<u64>, command: &str) -> Result<u64> {
    match cli.seed.or(config) {
        Some(s) => Ok(s),
        None => bail!("`{command}` needs --seed"),
    }
}

pub fn cmd_analyze(cli: &Cli, args: &AnalyzeArgs, out: &mut dyn Write) -> Result<()> {
    let text = fs::read_to_string(&args.input).with_context(|| format!("cannot read {}", args.input.display()))?;
    let stats = analyze_corpus(text.chars(), args.letters.chars())?;
    let to_file = emit(cli, &to_json(&stats)?, out)?;
    if to_file && !cli.quiet {
        writeln!(
            out,
            "letters {}  bigrams {}",
            stats.total_letters(),
            stats.total_bigrams()
        )?;
        writeln!(out, "letter  p")?;
        for c in stats.letters_by_frequency() {
            writeln!(out, "{c}       {:.4}", stats.freq(c))?;
        }
        writeln!(out, "bigram  p")?;
        for ((a, b), p) in stats.top_bigrams(args.top) {
            writeln!(out, "{a}{b}      {p:.4}")?;
        }
    }
    Ok(())
}

fn glyph_config(config: &ConfigFile) -> Result<GlyphConfig> {
    let g = config.glyph.clone().unwrap_or_default();
    g.validate().context("invalid [glyph] config")?;
    Ok(g)
}

/// Glyph `i` of a pool generated from `seed`.
pub fn pool_glyph(seed: u64, i: usize, config: &GlyphConfig) -> Result<Glyph> {
    Ok(generate_glyph(derive_seed(seed, &[i as u64]), config)?)
}

pub fn cmd_generate(cli: &Cli, config: &ConfigFile, args: &GenerateArgs, out: &mut dyn Write) -> Result<()> {
    let seed = require_seed(cli, config.evolution.seed, "generate")?;
    if args.count == 0 {
        bail!("--count must be at least 1");
    }
    let gc = glyph_config(config)?;
    let pool = (0..args.count)
        .map(|i| pool_glyph(seed, i, &gc))
        .collect::<Result<Vec<_>>>()?;
    let to_file = emit(cli, &to_json(&pool)?, out)?;
    if to_file && !cli.quiet {
        let mean = pool.iter().map(|g| g.interior_points() as f64).sum::<f64>() / pool.len() as f64;
        writeln!(out, "generated {} glyphs, mean interior points {mean:.4}", pool.len())?;
    }
    Ok(())
}

/// Combines defaults, the config file and flags, in increasing priority.
pub fn evolution_config(cli: &Cli, config: &ConfigFile, args: &EvolveArgs) -> Result<EvolutionConfig> {
    let e = &config.evolution;
    let mut c = EvolutionConfig {
        seed: require_seed(cli, e.seed, "evolve")?,
        ..EvolutionConfig::default()
    };
    if let Some(g) = &config.glyph {
        c.glyph = g.clone();
    }
    if let Some(s) = &config.scoring {
        c.scoring = s.clone();
    }
    if let Some(r) = &e.mutation_rates {
        c.mutation_rates = r.clone();
    }
    c.population_size = args.population.or(e.population_size).unwrap_or(c.population_size);
    c.generations = args.generations.or(e.generations).unwrap_or(c.generations);
    c.elitism_count = args.elitism.or(e.elitism_count).unwrap_or(c.elitism_count);
    c.tournament_size = args.tournament.or(e.tournament_size).unwrap_or(c.tournament_size);
    c.crossover = args.crossover.or(e.crossover).unwrap_or(c.crossover);
    c.stagnation_limit = args.stagnation_limit.or(e.stagnation_limit).or(c.stagnation_limit);
    c.checkpoint_every = args.checkpoint_every.or(e.checkpoint_every).or(c.checkpoint_every);
    c.validate()?;
    Ok(c)
}

#[derive(Serialize)]
struct Checkpoint {
    generation: usize,
    totals: Vec<f64>,
    population: Vec<AlphabetDocument>,
}

pub fn cmd_evolve(cli: &Cli, config: &ConfigFile, args: &EvolveArgs, out: &mut dyn Write) -> Result<()> {
    let ec = evolution_config(cli, config, args)?;
    let stats: CorpusStats = read_json(&args.corpus, "corpus statistics")?;
    let dir = cli.output.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).with_context(|| format!("cannot create {}", dir.display()))?;

    let mut search = Evolution::new(ec.clone(), &stats)?;
    if let Some(p) = &args.init {
        let pool: Vec<Glyph> = read_json(p, "glyph pool")?;
        search = search.with_pool(pool)?;
    }
    if let Some(n) = cli.threads {
        search = search.with_threads(n);
    }

    let checkpoint_dir = dir.join("checkpoints");
    let failure: RefCell<Option<anyhow::Error>> = RefCell::new(None);
    let report = search.run_with(None, |generation, population| {
        let Some(every) = ec.checkpoint_every else { return };
        if generation == 0 || generation % every != 0 || failure.borrow().is_some() {
            return;
        }
        let snapshot = Checkpoint {
            generation,
            totals: population
                .iter()
                .map(|a| a.score().map_or(f64::NAN, |s| s.total))
                .collect(),
            population: population
                .iter()
                .map(|a| AlphabetDocument::new(a, &ec.scoring, Some(&stats)))
                .collect(),
        };
        let result = fs::create_dir_all(&checkpoint_dir)
            .map_err(anyhow::Error::from)
            .and_then(|_| to_json(&snapshot))
            .and_then(|json| write_file(&checkpoint_dir.join(format!("gen_{generation:05}.json")), &json));
        if let Err(e) = result {
            *failure.borrow_mut() = Some(e);
        }
    })?;
    if let Some(e) = failure.into_inner() {
        return Err(e.context("checkpoint failed"));
    }

    let best = AlphabetDocument::new(&report.best, &ec.scoring, Some(&stats));
    write_file(&dir.join("alphabet.json"), &to_json(&best)?)?;
    write_file(&dir.join("report.json"), &to_json(&report.to_document(&stats))?)?;
    write_file(&dir.join("history.csv"), &report.history_csv())?;
    if !cli.quiet {
        writeln!(
            out,
            "generations {}  best total {:.4}{}",
            report.history.len(),
            report.best_total(),
            if report.stopped_early { "  (stopped early)" } else { "" }
        )?;
        writeln!(out, "wrote {}", dir.display())?;
    }
    Ok(())
}

fn load_alphabet(path: &Path) -> Result<(Alphabet, Scoring)> {
    let doc: AlphabetDocument = read_json(path, "alphabet")?;
    let a = doc
        .alphabet()
        .with_context(|| format!("invalid alphabet {}", path.display()))?;
    Ok((a, doc.weights))
}

pub fn cmd_eval(cli: &Cli, config: &ConfigFile, args: &EvalArgs, out: &mut dyn Write) -> Result<()> {
    let (a, weights) = load_alphabet(&args.alphabet)?;
    let stats: CorpusStats = read_json(&args.corpus, "corpus statistics")?;
    let scoring = config.scoring.clone().unwrap_or(weights);
    scoring.validate()?;
    let s = alphabet_fitness(&a, &stats, &scoring)?;
    let mut text = format!("{:<22} {}\n", "letters", s.letters);
    for (name, v) in [
        ("sum_fitness", s.sum_fitness),
        ("sum_dissimilarity", s.sum_dissimilarity),
        ("freq_weighted_fitness", s.freq_weighted_fitness),
        ("connection_score", s.connection_score),
        ("mean_fitness", s.mean_fitness),
        ("mean_dissimilarity", s.mean_dissimilarity),
        ("total", s.total),
    ] {
        text.push_str(&format!("{name:<22} {v:.4}\n"));
    }
    if let Some(p) = &cli.output {
        write_file(p, &to_json(&s)?)?;
    }
    if cli.output.is_none() || !cli.quiet {
        out.write_all(text.as_bytes())?;
    }
    Ok(())
}

pub fn cmd_render(cli: &Cli, config: &ConfigFile, args: &RenderArgs, out: &mut dyn Write) -> Result<()> {
    let (a, weights) = load_alphabet(&args.alphabet)?;
    let mut glyph_opts = RenderOptions::default();
    if let Some(size) = args.cell_size {
        if !(size.is_finite() && size > 0.0) {
            bail!("--cell-size must be positive, got {size}");
        }
        glyph_opts.cell_size = size;
    }
    glyph_opts.show_unit_box = args.unit_box;
    glyph_opts.show_control_points = args.control_points;

    let svg = if let Some(letter) = args.glyph {
        let g = a
            .glyph(letter)
            .with_context(|| format!("letter `{letter}` is not in the alphabet"))?;
        render_glyph(g, &glyph_opts)?
    } else if let Some(word) = &args.word {
        render_word(&a, word, &glyph_opts)?
    } else {
        let mut opts = SheetOptions {
            glyph: glyph_opts,
            ..SheetOptions::default()
        };
        if let Some(c) = args.columns {
            if c == 0 {
                bail!("--columns must be at least 1");
            }
            opts.columns = c;
        }
        if let Some(p) = &args.corpus {
            let stats: CorpusStats = read_json(p, "corpus statistics")?;
            opts.order = SheetOrder::Frequency(stats.letter_freq().clone());
        }
        if args.annotate {
            opts.annotate = Some(config.scoring.clone().unwrap_or(weights));
        }
        render_alphabet(&a, &opts)?
    };
    let to_file = emit(cli, &svg, out)?;
    if to_file && !cli.quiet {
        writeln!(out, "wrote {}", cli.output.as_ref().expect("output set").display())?;
    }
    Ok(())
}
