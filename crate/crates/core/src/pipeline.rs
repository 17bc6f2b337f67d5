//! End-to-end orchestration: query analysis, the keyword-search and
//! concept-wise paths, fault accounting, and the evaluation loop over a
//! labeled query suite.

use thiserror::Error;

use crate::aggregate::aggregate_lines;
use crate::answer::{best_answer, AnswerError};
use crate::config::{Backend, ConfigError, PipelineConfig};
use crate::extract::{segment, select, weigh, Component};
use crate::lexicon::{Lexicon, LexiconError};
use crate::metrics::{
    evaluate_records, CategoryReport, LabeledQuery, MetricsError, RunRecord,
};
use crate::query::{analyze, Query, QueryCategory, QueryError};
use crate::retrieval::{
    fetch_document, Document, FixtureBackend, LiveBackend, RetrievalError, SearchBackend,
};
use crate::tree::{expand, ConceptTree, TreeError};

/// Hard failures: broken configuration, unreadable resources, backend
/// outage. These map to CLI exit code 1.
#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error("search backend failure: {0}")]
    Backend(String),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// Soft failures: the pipeline ran but produced nothing for this query.
/// These map to CLI exit code 2 and count into fault metrics.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum AskError {
    #[error("query contains no noun or pronoun keywords")]
    EmptyKeywords,
    #[error("no sentence in the retrieved document answers the query")]
    NoAnswer,
    #[error("aggregation eliminated every line; no summary to show")]
    EmptySummary,
    #[error("no usable documents were retrieved for the query")]
    NoDocuments,
}

/// What `ask` prints on success.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AskOutcome {
    /// Keyword-search path: one best-matching sentence (plus context).
    Answer {
        text: String,
        location: String,
        match_count: usize,
    },
    /// Concept-wise path: the aggregated summary.
    Summary {
        concepts: Vec<String>,
        sentences: Vec<String>,
    },
}

impl AskOutcome {
    /// The text a user sees (and the speech adapter receives).
    pub fn render(&self) -> String {
        match self {
            AskOutcome::Answer { text, .. } => format!("{text}\n"),
            AskOutcome::Summary { sentences, .. } => {
                let mut out = String::new();
                for sentence in sentences {
                    out.push_str(sentence);
                    out.push('\n');
                }
                out
            }
        }
    }
}

/// Latency, line-count and fault measurements for one query, kept even
/// when the outcome is a soft failure.
#[derive(Debug, Clone, Default)]
pub struct RunStats {
    pub doc_extraction_latency: Vec<f64>,
    pub info_retrieval_latency: Vec<f64>,
    pub fault_docs: usize,
    pub summary_lines: usize,
    pub original_lines: usize,
    /// Mean of per-document summarization ratios; 0 when nothing ran.
    pub effective_ratio: f64,
}

/// Outcome plus measurements for one `ask` invocation.
#[derive(Debug)]
pub struct AskReport {
    pub query: Query,
    pub outcome: Result<AskOutcome, AskError>,
    pub stats: RunStats,
}

/// A configured, ready-to-run pipeline.
pub struct Pipeline {
    config: PipelineConfig,
    lexicon: Lexicon,
    tree: ConceptTree,
    backend: Box<dyn SearchBackend>,
}

impl Pipeline {
    pub fn new(config: PipelineConfig) -> Result<Self, PipelineError> {
        config.validate()?;
        let lexicon = match &config.lexicon_path {
            Some(path) => Lexicon::from_file(path)?,
            None => Lexicon::bundled(),
        };
        let tree = match &config.tree_path {
            Some(path) => ConceptTree::load(path)?,
            None => ConceptTree::bundled(),
        };
        let backend: Box<dyn SearchBackend> = match &config.backend {
            Backend::Fixture(path) => Box::new(
                FixtureBackend::open(path).map_err(|e| PipelineError::Backend(e.to_string()))?,
            ),
            Backend::Live(live) => Box::new(
                LiveBackend::new(live.clone())
                    .map_err(|e| PipelineError::Backend(e.to_string()))?,
            ),
        };
        Ok(Self {
            config,
            lexicon,
            tree,
            backend,
        })
    }

    pub fn config(&self) -> &PipelineConfig {
        &self.config
    }

    pub fn lexicon(&self) -> &Lexicon {
        &self.lexicon
    }

    pub fn tree(&self) -> &ConceptTree {
        &self.tree
    }

    /// Analyzes and runs one query along the path its category selects.
    pub fn ask(&self, query_text: &str) -> Result<AskReport, PipelineError> {
        let query = match analyze(query_text, &self.lexicon) {
            Ok(query) => query,
            Err(QueryError::EmptyKeywords) => {
                // still categorizable, but unanswerable: one fault entry
                return Ok(AskReport {
                    query: Query::unanswerable(query_text, &self.lexicon),
                    outcome: Err(AskError::EmptyKeywords),
                    stats: RunStats {
                        fault_docs: 1,
                        ..RunStats::default()
                    },
                });
            }
        };
        let report = match query.category {
            QueryCategory::KeywordSearch => self.ask_keyword(&query)?,
            QueryCategory::ConceptWise => self.ask_concept(&query)?,
        };
        Ok(AskReport {
            query,
            outcome: report.0,
            stats: report.1,
        })
    }

    /// Keyword path: search with the extracted keywords, take the top
    /// result only, return its best-matching sentence.
    fn ask_keyword(
        &self,
        query: &Query,
    ) -> Result<(Result<AskOutcome, AskError>, RunStats), PipelineError> {
        let mut stats = RunStats::default();
        let search_string = query.keywords.search_string();
        let results = match self.backend.search(&search_string, 1) {
            Ok(results) => results,
            Err(RetrievalError::NoResults(_)) => {
                stats.fault_docs = 1;
                return Ok((Err(AskError::NoDocuments), stats));
            }
            Err(e) => return Err(PipelineError::Backend(e.to_string())),
        };
        let doc = fetch_document(&results[0], self.backend.as_ref());
        stats.doc_extraction_latency.push(doc.convert_latency);
        stats.info_retrieval_latency.push(doc.fetch_latency);
        if doc.fault {
            stats.fault_docs = 1;
            return Ok((Err(AskError::NoAnswer), stats));
        }
        stats.original_lines = doc.sentences.len();
        match best_answer(&doc, &query.keywords) {
            Ok(best) => {
                let c = self.config.context_sentences;
                let start = best.index.saturating_sub(c);
                let end = (best.index + c + 1).min(doc.sentences.len());
                let text = doc.sentences[start..end].join(" ");
                stats.summary_lines = end - start;
                stats.effective_ratio = stats.summary_lines as f64 / doc.sentences.len() as f64;
                Ok((
                    Ok(AskOutcome::Answer {
                        text,
                        location: doc.source.location.clone(),
                        match_count: best.match_count,
                    }),
                    stats,
                ))
            }
            Err(AnswerError::NoAnswer) => {
                // a healthy document that projected nothing relevant
                stats.fault_docs = 1;
                Ok((Err(AskError::NoAnswer), stats))
            }
        }
    }

    /// Concept path: tree lookup, one search per concept word, per-document
    /// component extraction, aggregation into a summary.
    fn ask_concept(
        &self,
        query: &Query,
    ) -> Result<(Result<AskOutcome, AskError>, RunStats), PipelineError> {
        let mut stats = RunStats::default();
        let concepts = self
            .tree
            .lookup(&query.keywords, &self.config.default_concepts);
        let expanded = expand(&query.keywords, &concepts);

        let mut docs: Vec<Document> = Vec::new();
        for (_, search_string) in &expanded.concept_queries {
            let results = match self.backend.search(search_string, self.config.results_per_query) {
                Ok(results) => results,
                Err(RetrievalError::NoResults(_)) => {
                    // a concept search that projected nothing
                    stats.fault_docs += 1;
                    continue;
                }
                Err(e) => return Err(PipelineError::Backend(e.to_string())),
            };
            for result in &results {
                docs.push(fetch_document(result, self.backend.as_ref()));
            }
        }
        for doc in &docs {
            stats.doc_extraction_latency.push(doc.convert_latency);
            stats.info_retrieval_latency.push(doc.fetch_latency);
            if doc.fault {
                stats.fault_docs += 1;
            }
        }
        let live: Vec<&Document> = docs.iter().filter(|d| !d.fault).collect();
        if live.is_empty() {
            return Ok((Err(AskError::NoDocuments), stats));
        }
        stats.original_lines = live.iter().map(|d| d.sentences.len()).sum();

        // per-document extraction, with each flattened sentence mapped
        // back to its document for the effective-ratio arithmetic
        let matching = expanded.matching_keywords();
        let mut components: Vec<Component> = Vec::new();
        let mut line_doc: Vec<usize> = Vec::new();
        for (doc_idx, doc) in docs.iter().enumerate() {
            if doc.fault {
                continue;
            }
            let weighted: Vec<Component> = segment(doc, self.config.component_size)
                .expect("non-fault documents have sentences")
                .into_iter()
                .map(|c| weigh(c, &matching))
                .collect();
            for component in select(weighted, self.config.policy) {
                line_doc.extend(std::iter::repeat_n(doc_idx, component.sentences.len()));
                components.push(component);
            }
        }

        let survivors = match aggregate_lines(&components, &self.config.dedup, &self.lexicon) {
            Ok(survivors) => survivors,
            Err(_) => {
                stats.effective_ratio = 0.0;
                return Ok((Err(AskError::EmptySummary), stats));
            }
        };
        stats.summary_lines = survivors.len();

        let mut kept_per_doc = vec![0usize; docs.len()];
        for line in &survivors {
            kept_per_doc[line_doc[line.line_index]] += 1;
        }
        let ratios: Vec<f64> = docs
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.fault)
            .map(|(i, d)| kept_per_doc[i] as f64 / d.sentences.len() as f64)
            .collect();
        stats.effective_ratio = ratios.iter().sum::<f64>() / ratios.len() as f64;

        Ok((
            Ok(AskOutcome::Summary {
                concepts,
                sentences: survivors.into_iter().map(|l| l.text).collect(),
            }),
            stats,
        ))
    }

    /// Runs every labeled query and reduces the records to per-category
    /// reports. Soft failures become fault entries; hard errors abort.
    pub fn evaluate(
        &self,
        labels: &[LabeledQuery],
    ) -> Result<(Vec<RunRecord>, Vec<CategoryReport>), PipelineError> {
        let mut records = Vec::new();
        for label in labels {
            let report = self.ask(&label.query_text)?;
            let produced = report.outcome.is_ok();
            records.push(RunRecord {
                query_id: label.query_id.clone(),
                category: label.category.clone(),
                doc_extraction_latency: report.stats.doc_extraction_latency,
                info_retrieval_latency: report.stats.info_retrieval_latency,
                summary_lines: report.stats.summary_lines,
                original_lines: report.stats.original_lines,
                relevant: label.expected_relevant && produced,
                fault_docs: report.stats.fault_docs,
                opinion_scores: label.opinion_scores.clone(),
                effective_ratio: report.stats.effective_ratio,
            });
        }
        let reports = evaluate_records(&records)?;
        Ok((records, reports))
    }
}
