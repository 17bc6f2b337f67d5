//! Redundancy elimination over the resultant document: a keyword-overlap
//! pre-pass that removes later near-duplicate lines, followed by a
//! probabilistic pass that scores each reference line against the other
//! survivors and discards references whose score exceeds a threshold.

use thiserror::Error;

use crate::extract::Component;
use crate::lexicon::Lexicon;
use crate::query::{tag, tokenize, Tag};

pub const DEFAULT_OVERLAP_FRACTION: f64 = 0.75;
pub const DEFAULT_FIXED_THRESHOLD: f64 = 0.5;

/// One line of the resultant document with its keyword set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LineKeywords {
    /// Position in the flattened resultant document.
    pub line_index: usize,
    pub text: String,
    /// Ordered, duplicate-free normalized noun/pronoun tokens.
    pub keywords: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThresholdMode {
    /// Compare every reference's score against one fixed threshold.
    Fixed,
    /// Threshold = mean score of all reference lines, computed in a
    /// first pass before any line is discarded.
    DocumentAverage,
}

#[derive(Debug, Clone)]
pub struct DedupConfig {
    /// Fraction of the smaller keyword set that must overlap for a match.
    pub overlap_fraction: f64,
    pub threshold_mode: ThresholdMode,
    pub fixed_threshold: f64,
}

impl Default for DedupConfig {
    fn default() -> Self {
        Self {
            overlap_fraction: DEFAULT_OVERLAP_FRACTION,
            threshold_mode: ThresholdMode::Fixed,
            fixed_threshold: DEFAULT_FIXED_THRESHOLD,
        }
    }
}

#[derive(Debug, Error)]
pub enum AggregateError {
    #[error("probability is undefined for P={p}, C={c}")]
    Domain { p: usize, c: usize },
    #[error("every line was eliminated; nothing to summarize")]
    EmptySummary,
}

/// Tags each sentence with the query lexicon rules and keeps the
/// distinct noun/pronoun tokens. Keyword-less lines get empty sets.
pub fn line_keywords(sentences: &[String], lexicon: &Lexicon) -> Vec<LineKeywords> {
    sentences
        .iter()
        .enumerate()
        .map(|(line_index, text)| {
            let mut keywords = Vec::new();
            for token in tag(&tokenize(text), lexicon) {
                if matches!(token.tag, Tag::Noun | Tag::Pronoun)
                    && !keywords.contains(&token.normalized)
                {
                    keywords.push(token.normalized);
                }
            }
            LineKeywords {
                line_index,
                text: text.clone(),
                keywords,
            }
        })
        .collect()
}

fn intersection_size(a: &[String], b: &[String]) -> usize {
    a.iter().filter(|k| b.contains(k)).count()
}

fn is_subset(small: &[String], large: &[String]) -> bool {
    small.iter().all(|k| large.contains(k))
}

/// Earlier lines act as references; a later line is discarded when its
/// keyword set nearly coincides with the reference's (equal sizes with
/// three-quarters overlap) or one set contains the other. Discarded
/// lines never serve as references. Lines without keywords are inert:
/// an empty set would vacuously "overlap" everything.
pub fn overlap_dedup(lines: &[LineKeywords], cfg: &DedupConfig) -> Vec<LineKeywords> {
    let mut survivors: Vec<LineKeywords> = Vec::new();
    'next: for line in lines {
        if !line.keywords.is_empty() {
            for reference in &survivors {
                if reference.keywords.is_empty() {
                    continue;
                }
                let (ni, nj) = (reference.keywords.len(), line.keywords.len());
                let discard = if ni == nj {
                    intersection_size(&reference.keywords, &line.keywords) as f64
                        >= cfg.overlap_fraction * ni as f64
                } else if ni > nj {
                    is_subset(&line.keywords, &reference.keywords)
                } else {
                    is_subset(&reference.keywords, &line.keywords)
                };
                if discard {
                    continue 'next;
                }
            }
        }
        survivors.push(line.clone());
    }
    survivors
}

/// Probability score for P successes out of C comparisons:
/// (1/C)·(P/C)^P·(1 − P/C)^(C−P), with 0⁰ = 1.
pub fn pro_score(p: usize, c: usize) -> Result<f64, AggregateError> {
    if c == 0 || p > c {
        return Err(AggregateError::Domain { p, c });
    }
    let ratio = p as f64 / c as f64;
    let pow = |base: f64, exp: usize| if exp == 0 { 1.0 } else { base.powi(exp as i32) };
    Ok((1.0 / c as f64) * pow(ratio, p) * pow(1.0 - ratio, c - p))
}

/// A comparison between two lines succeeds when the smaller keyword set
/// overlaps the other by at least the configured fraction; empty sets
/// never match.
fn lines_match(a: &[String], b: &[String], overlap_fraction: f64) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    let smaller = a.len().min(b.len());
    intersection_size(a, b) as f64 >= overlap_fraction * smaller as f64
}

/// Score of one reference against every other line in `pool`, skipping
/// the reference itself. Returns None when there is nothing to compare.
fn reference_pro(
    reference: &LineKeywords,
    pool: &[&LineKeywords],
    overlap_fraction: f64,
) -> Option<f64> {
    let mut p = 0;
    let mut c = 0;
    for other in pool {
        if other.line_index == reference.line_index {
            continue;
        }
        c += 1;
        if lines_match(&reference.keywords, &other.keywords, overlap_fraction) {
            p += 1;
        }
    }
    (c >= 1).then(|| pro_score(p, c).expect("p <= c by construction"))
}

/// Second dedup pass: each reference line (in order) is scored against
/// the other surviving lines; a reference whose score exceeds the
/// threshold is discarded — later copies survive, unlike the pre-pass.
pub fn probabilistic_dedup(lines: &[LineKeywords], cfg: &DedupConfig) -> Vec<LineKeywords> {
    if lines.is_empty() {
        return Vec::new();
    }
    let threshold = match cfg.threshold_mode {
        ThresholdMode::Fixed => cfg.fixed_threshold,
        ThresholdMode::DocumentAverage => {
            let all: Vec<&LineKeywords> = lines.iter().collect();
            let pros: Vec<f64> = lines
                .iter()
                .filter_map(|line| reference_pro(line, &all, cfg.overlap_fraction))
                .collect();
            if pros.is_empty() {
                return lines.to_vec(); // single line: nothing to compare
            }
            pros.iter().sum::<f64>() / pros.len() as f64
        }
    };
    let mut alive: Vec<bool> = vec![true; lines.len()];
    for i in 0..lines.len() {
        let pool: Vec<&LineKeywords> = lines
            .iter()
            .enumerate()
            .filter(|(j, _)| alive[*j])
            .map(|(_, l)| l)
            .collect();
        if let Some(pro) = reference_pro(&lines[i], &pool, cfg.overlap_fraction) {
            if pro > threshold {
                alive[i] = false;
            }
        }
    }
    lines
        .iter()
        .zip(&alive)
        .filter(|(_, keep)| **keep)
        .map(|(l, _)| l.clone())
        .collect()
}

/// Flattens selected components into the resultant document and runs
/// both dedup passes. Survivors keep their `line_index` into the
/// flattened document so callers can attribute lines to sources.
pub fn aggregate_lines(
    components: &[Component],
    cfg: &DedupConfig,
    lexicon: &Lexicon,
) -> Result<Vec<LineKeywords>, AggregateError> {
    let sentences: Vec<String> = components
        .iter()
        .flat_map(|c| c.sentences.iter().cloned())
        .collect();
    let lines = line_keywords(&sentences, lexicon);
    let survivors = probabilistic_dedup(&overlap_dedup(&lines, cfg), cfg);
    if survivors.is_empty() {
        return Err(AggregateError::EmptySummary);
    }
    Ok(survivors)
}

/// The surviving sentences of `aggregate_lines`, text only.
pub fn aggregate(
    components: &[Component],
    cfg: &DedupConfig,
    lexicon: &Lexicon,
) -> Result<Vec<String>, AggregateError> {
    Ok(aggregate_lines(components, cfg, lexicon)?
        .into_iter()
        .map(|l| l.text)
        .collect())
}
