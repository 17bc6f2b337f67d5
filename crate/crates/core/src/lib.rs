//! Query-driven multi-document extractive summarization.
//!
//! A query is tokenized and tagged against a bundled lexicon, then
//! routed down one of two paths:
//!
//! * **Keyword search** — queries carrying a wh-word. The keywords are
//!   searched, the top document fetched, and the sentence with the most
//!   keyword matches returned as the answer.
//! * **Concept-wise search** — entity queries. A concept tree expands
//!   the query into one search per concept word (career, personal,
//!   demography, ...); every retrieved document is segmented into
//!   ten-sentence components, weighted by `W = 2·N + Pn` over noun and
//!   pronoun matches, and the heaviest components are aggregated into a
//!   summary after two redundancy-elimination passes.
//!
//! Retrieval runs against either an offline fixture corpus (fully
//! deterministic, used by all tests) or a live HTTP endpoint behind the
//! same [`retrieval::SearchBackend`] interface. [`metrics`] implements
//! the evaluation arithmetic (opinion scores, summarization ratio,
//! precision, latency rates) and [`pipeline::Pipeline`] wires the whole
//! flow together.

pub mod aggregate;
pub mod answer;
pub mod config;
pub mod extract;
pub mod html;
pub mod lexicon;
pub mod metrics;
pub mod pipeline;
pub mod query;
pub mod retrieval;
pub mod sentence;
pub mod tree;

pub use aggregate::{
    aggregate, aggregate_lines, line_keywords, overlap_dedup, pro_score, probabilistic_dedup,
    AggregateError, DedupConfig, LineKeywords, ThresholdMode,
};
pub use answer::{best_answer, score_sentence, AnswerError, ScoredSentence};
pub use config::{Backend, ConfigError, PipelineConfig};
pub use extract::{
    extract_all, segment, select, weigh, Component, ExtractError, SelectionPolicy,
};
pub use html::html_to_text;
pub use lexicon::{LexClass, Lexicon, LexiconError};
pub use metrics::{
    evaluate_records, mean_rates, mos, parse_labels, precision, render_records, render_report,
    summarization_ratio, CategoryReport, LabeledQuery, MetricsError, RateSummary, RunRecord,
};
pub use pipeline::{AskError, AskOutcome, AskReport, Pipeline, PipelineError, RunStats};
pub use query::{
    analyze, categorize, extract_keywords, tag, tokenize, KeywordSet, Query, QueryCategory,
    QueryError, Tag, TaggedToken,
};
pub use retrieval::{
    fetch_document, Document, FixtureBackend, LiveBackend, LiveConfig, RetrievalError,
    SearchBackend, SearchResult,
};
pub use sentence::segment_sentences;
pub use tree::{expand, ConceptNode, ConceptTree, ExpandedQuery, TreeError};
