// Copyright 2026 the Scriptsmith Authors
// SPDX-License-Identifier: Apache-2.0

//! SVG output for glyphs, alphabet sheets and connected words.
//!
//! Coordinates are absolute and printed with four decimals, so identical
//! inputs always produce identical bytes. Glyph space has `y` pointing up;
//! it is flipped on the way to the canvas.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::alphabet::{Alphabet, Scoring};
use crate::geometry::Point;
use crate::glyph::{validate_glyph, Glyph, ValidationReport, OVERSHOOT};
use crate::metrics::{connection_ease, MetricsError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    #[error("glyph `{id}` cannot be rendered: {report}")]
    InvalidGlyph { id: String, report: ValidationReport },
    #[error("letter `{0}` has no glyph in this alphabet")]
    UnmappedLetter(char),
    #[error("word is empty")]
    EmptyWord,
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    /// Side of one glyph cell in pixels.
    pub cell_size: f64,
    /// Stroke width as a fraction of the cell size.
    pub stroke_fraction: f64,
    pub stroke_color: String,
    pub connector_color: String,
    pub show_unit_box: bool,
    pub show_control_points: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions {
            cell_size: 256.0,
            stroke_fraction: 0.02,
            stroke_color: "#000000".into(),
            connector_color: "#d62728".into(),
            show_unit_box: false,
            show_control_points: false,
        }
    }
}

impl RenderOptions {
    /// Pixels per glyph unit. The unit box plus its overshoot band fills the cell.
    fn scale(&self) -> f64 {
        self.cell_size / (1.0 + 2.0 * OVERSHOOT)
    }

    fn margin(&self) -> f64 {
        OVERSHOOT * self.scale()
    }

    fn stroke_width(&self) -> f64 {
        self.cell_size * self.stroke_fraction
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub enum SheetOrder {
    #[default]
    Lexicographic,
    /// Most frequent first, ties by letter; letters missing from the map count as 0.
    Frequency(BTreeMap<char, f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SheetOptions {
    pub glyph: RenderOptions,
    pub columns: usize,
    pub order: SheetOrder,
    /// Scores used for fitness annotations; `None` leaves cells unannotated.
    pub annotate: Option<Scoring>,
    /// Space reserved under each cell for its label.
    pub label_height: f64,
}

impl Default for SheetOptions {
    fn default() -> Self {
        SheetOptions {
            glyph: RenderOptions::default(),
            columns: 6,
            order: SheetOrder::Lexicographic,
            annotate: None,
            label_height: 40.0,
        }
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.4}");
    // Avoid "-0.0000".
    if s.trim_start_matches('-').chars().all(|c| c == '0' || c == '.') {
        "0.0000".to_owned()
    } else {
        s
    }
}

fn escape(c: char) -> String {
    match c {
        '<' => "&lt;".into(),
        '>' => "&gt;".into(),
        '&' => "&amp;".into(),
        '"' => "&quot;".into(),
        '\'' => "&apos;".into(),
        c => c.to_string(),
    }
}

/// Maps glyph space to the canvas. `shift` moves the glyph right in glyph
/// units before scaling, so abutting glyphs map their shared junction to the
/// same pixel.
#[derive(Debug, Clone, Copy)]
struct Placement {
    origin_x: f64,
    origin_y: f64,
    scale: f64,
    shift: f64,
}

impl Placement {
    fn map(&self, p: Point) -> (f64, f64) {
        (
            self.origin_x + (p.x + self.shift) * self.scale,
            self.origin_y - p.y * self.scale,
        )
    }

    fn fmt(&self, p: Point) -> String {
        let (x, y) = self.map(p);
        format!("{} {}", num(x), num(y))
    }
}

fn check(g: &Glyph) -> Result<(), RenderError> {
    let report = validate_glyph(g);
    if report.is_valid() {
        Ok(())
    } else {
        Err(RenderError::InvalidGlyph {
            id: g.id().to_owned(),
            report,
        })
    }
}

/// Path data: one `M` followed by one `C` per segment.
fn path_data(g: &Glyph, place: &Placement) -> String {
    let mut d = format!("M {}", place.fmt(g.path().start()));
    for seg in g.path().segments() {
        let [_, c1, c2, end] = seg.0;
        let _ = write!(d, " C {} {} {}", place.fmt(c1), place.fmt(c2), place.fmt(end));
    }
    d
}

fn svg_open(out: &mut String, width: f64, height: f64) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = num(width),
        h = num(height)
    );
}

fn glyph_elements(out: &mut String, g: &Glyph, place: &Placement, opts: &RenderOptions) {
    let scale = place.scale;
    if opts.show_unit_box {
        let (x, y) = place.map(Point::new(0.0, 1.0));
        let _ = writeln!(
            out,
            r##"<rect class="unit-box" x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#cccccc" stroke-width="1"/>"##,
            num(x),
            num(y),
            num(scale),
            num(scale)
        );
    }
    let _ = writeln!(
        out,
        r#"<path class="glyph" data-id="{}" d="{}" fill="none" stroke="{}" stroke-width="{}" stroke-linecap="round" stroke-linejoin="round"/>"#,
        g.id().replace('&', "&amp;").replace('"', "&quot;").replace('<', "&lt;"),
        path_data(g, place),
        opts.stroke_color,
        num(opts.stroke_width())
    );
    if opts.show_control_points {
        let r = num(opts.stroke_width());
        for p in g.path().points() {
            let (x, y) = place.map(p);
            let _ = writeln!(
                out,
                r##"<circle class="control-point" cx="{}" cy="{}" r="{r}" fill="#1f77b4"/>"##,
                num(x),
                num(y)
            );
        }
    }
}

fn cell_placement(x0: f64, y0: f64, opts: &RenderOptions) -> Placement {
    Placement {
        origin_x: x0 + opts.margin(),
        origin_y: y0 + opts.margin() + opts.scale(),
        scale: opts.scale(),
        shift: 0.0,
    }
}

/// One glyph on a `cell_size` square canvas.
pub fn render_glyph(g: &Glyph, opts: &RenderOptions) -> Result<String, RenderError> {
    check(g)?;
    let mut out = String::new();
    svg_open(&mut out, opts.cell_size, opts.cell_size);
    glyph_elements(&mut out, g, &cell_placement(0.0, 0.0, opts), opts);
    out.push_str("</svg>\n");
    Ok(out)
}

/// A grid of labelled cells, one per letter.
pub fn render_alphabet(a: &Alphabet, opts: &SheetOptions) -> Result<String, RenderError> {
    let mut letters: Vec<char> = a.letters().collect();
    if let SheetOrder::Frequency(freq) = &opts.order {
        let f = |c: &char| freq.get(c).copied().unwrap_or(0.0);
        letters.sort_by(|x, y| f(y).total_cmp(&f(x)).then(x.cmp(y)));
    }
    let columns = opts.columns.max(1);
    let rows = letters.len().div_ceil(columns);
    let cell = opts.glyph.cell_size;
    let cell_h = cell + opts.label_height;
    let mut out = String::new();
    svg_open(&mut out, cell * columns.min(letters.len()) as f64, cell_h * rows as f64);
    for (i, &letter) in letters.iter().enumerate() {
        let g = a.glyph(letter).ok_or(RenderError::UnmappedLetter(letter))?;
        check(g)?;
        let x0 = (i % columns) as f64 * cell;
        let y0 = (i / columns) as f64 * cell_h;
        let _ = writeln!(out, r#"<g class="cell" data-letter="{}">"#, escape(letter));
        glyph_elements(&mut out, g, &cell_placement(x0, y0, &opts.glyph), &opts.glyph);
        let mut label = escape(letter);
        if let Some(scoring) = &opts.annotate {
            let f = scoring.profile(g)?.metrics.fitness;
            let _ = write!(label, "  f={f:.3}");
        }
        let _ = writeln!(
            out,
            r#"<text class="label" x="{}" y="{}" font-family="sans-serif" font-size="{}" text-anchor="middle">{label}</text>"#,
            num(x0 + cell / 2.0),
            num(y0 + cell + opts.label_height * 0.7),
            num(opts.label_height * 0.6)
        );
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Horizontal gap, in glyph units, left before a glyph that does not connect.
pub const CONNECTOR_GAP: f64 = 0.25;

/// Glyphs of `word` laid out left to right on one baseline. Consecutive
/// glyphs that connect share their junction point; every other pair is
/// joined by a dashed connector stroke.
pub fn render_word(a: &Alphabet, word: &str, opts: &RenderOptions) -> Result<String, RenderError> {
    let glyphs = word
        .chars()
        .map(|c| a.glyph(c).ok_or(RenderError::UnmappedLetter(c)))
        .collect::<Result<Vec<_>, _>>()?;
    if glyphs.is_empty() {
        return Err(RenderError::EmptyWord);
    }
    for g in &glyphs {
        check(g)?;
    }
    let mut offsets = Vec::with_capacity(glyphs.len());
    let mut x = 0.0;
    for (k, g) in glyphs.iter().enumerate() {
        if k > 0 {
            x += 1.0;
            if connection_ease(glyphs[k - 1], g) == 0 {
                x += CONNECTOR_GAP;
            }
        }
        offsets.push(x);
    }
    let scale = opts.scale();
    let margin = opts.margin();
    let width = (x + 1.0) * scale + 2.0 * margin;
    let mut out = String::new();
    svg_open(&mut out, width, opts.cell_size);
    let place = cell_placement(0.0, 0.0, opts);
    for (k, g) in glyphs.iter().enumerate() {
        let shifted = Placement {
            shift: offsets[k],
            ..place
        };
        glyph_elements(&mut out, g, &shifted, opts);
    }
    for k in 1..glyphs.len() {
        if connection_ease(glyphs[k - 1], glyphs[k]) == 1 {
            continue;
        }
        let from = glyphs[k - 1].end_point() + Point::new(offsets[k - 1], 0.0);
        let to = glyphs[k].start_point() + Point::new(offsets[k], 0.0);
        let _ = writeln!(
            out,
            r#"<path class="connector" d="M {} L {}" fill="none" stroke="{}" stroke-width="{}" stroke-dasharray="{}"/>"#,
            place.fmt(from),
            place.fmt(to),
            opts.connector_color,
            num(opts.stroke_width() * 0.5),
            num(opts.stroke_width() * 1.5)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
