//! Component extraction: each document is divided into fixed-size
//! blocks of sentences, every block is weighted by keyword matches
//! (W = 2·N + Pn), and the heaviest blocks are selected per document.

use thiserror::Error;

use crate::query::{tokenize, KeywordSet};
use crate::retrieval::Document;

pub const DEFAULT_COMPONENT_SIZE: usize = 10;
pub const DEFAULT_TOP_K: usize = 3;

/// A contiguous block of sentences from one document, with its keyword
/// match counts and weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Component {
    /// Location of the source document.
    pub doc_ref: String,
    /// Zero-based index of the first sentence within the document.
    pub start_index: usize,
    pub sentences: Vec<String>,
    /// Per-sentence distinct noun-keyword matches, summed over sentences.
    pub n: usize,
    /// Per-sentence distinct pronoun-keyword matches, summed.
    pub pn: usize,
    /// 2·n + pn.
    pub w: f64,
}

/// How components are chosen within one document.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionPolicy {
    /// The k heaviest components, ties to the earlier block.
    TopK(usize),
    /// Every component strictly heavier than the document's mean weight.
    AboveAverage,
}

impl Default for SelectionPolicy {
    fn default() -> Self {
        SelectionPolicy::TopK(DEFAULT_TOP_K)
    }
}

#[derive(Debug, Error)]
pub enum ExtractError {
    #[error("document {0} has no sentences")]
    EmptyDocument(String),
    #[error("every retrieved document was a fault")]
    AllDocumentsFaulty,
}

/// Divides a document into consecutive blocks of `component_size`
/// sentences; the final block keeps the remainder. Weights are left at
/// zero for `weigh` to fill in.
pub fn segment(doc: &Document, component_size: usize) -> Result<Vec<Component>, ExtractError> {
    assert!(component_size >= 1, "component_size must be >= 1");
    if doc.sentences.is_empty() {
        return Err(ExtractError::EmptyDocument(doc.source.location.clone()));
    }
    Ok(doc
        .sentences
        .chunks(component_size)
        .enumerate()
        .map(|(i, chunk)| Component {
            doc_ref: doc.source.location.clone(),
            start_index: i * component_size,
            sentences: chunk.to_vec(),
            n: 0,
            pn: 0,
            w: 0.0,
        })
        .collect())
}

/// Distinct members of `words` appearing as whole tokens in the sentence.
fn distinct_matches(sentence: &str, words: &[String]) -> usize {
    let tokens: Vec<String> = tokenize(sentence)
        .into_iter()
        .map(|t| t.to_lowercase())
        .collect();
    words.iter().filter(|w| tokens.iter().any(|t| t == *w)).count()
}

/// Fills in N, Pn and W. Each sentence contributes its count of
/// distinct matching keywords, so a keyword repeated within one
/// sentence counts once but counts again in every further sentence
/// that contains it.
pub fn weigh(mut component: Component, keywords: &KeywordSet) -> Component {
    let mut n = 0;
    let mut pn = 0;
    for sentence in &component.sentences {
        n += distinct_matches(sentence, &keywords.nouns);
        pn += distinct_matches(sentence, &keywords.pronouns);
    }
    component.n = n;
    component.pn = pn;
    component.w = 2.0 * n as f64 + pn as f64;
    component
}

/// Applies the selection policy to one document's weighted components.
pub fn select(components: Vec<Component>, policy: SelectionPolicy) -> Vec<Component> {
    match policy {
        SelectionPolicy::TopK(k) => {
            let mut sorted = components;
            sorted.sort_by(|a, b| {
                b.w.partial_cmp(&a.w)
                    .expect("weights are finite")
                    .then(a.start_index.cmp(&b.start_index))
            });
            sorted.truncate(k);
            sorted
        }
        SelectionPolicy::AboveAverage => {
            if components.is_empty() {
                return components;
            }
            let mean = components.iter().map(|c| c.w).sum::<f64>() / components.len() as f64;
            components.into_iter().filter(|c| c.w > mean).collect()
        }
    }
}

/// Runs segment → weigh → select per document and concatenates the
/// selections in document order. Fault documents are skipped; if every
/// document is a fault there is nothing to summarize.
pub fn extract_all(
    docs: &[Document],
    keywords: &KeywordSet,
    component_size: usize,
    policy: SelectionPolicy,
) -> Result<Vec<Component>, ExtractError> {
    let mut out = Vec::new();
    let mut usable = 0;
    for doc in docs {
        if doc.fault || doc.sentences.is_empty() {
            continue;
        }
        usable += 1;
        let weighted: Vec<Component> = segment(doc, component_size)?
            .into_iter()
            .map(|c| weigh(c, keywords))
            .collect();
        out.extend(select(weighted, policy));
    }
    if usable == 0 {
        return Err(ExtractError::AllDocumentsFaulty);
    }
    Ok(out)
}
