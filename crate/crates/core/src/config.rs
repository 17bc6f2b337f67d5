//! Pipeline configuration: one `key = value` file with `#` comments,
//! plus programmatic overrides applied by the CLI. Precedence is
//! flags > file > defaults.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::aggregate::{DedupConfig, ThresholdMode};
use crate::extract::{SelectionPolicy, DEFAULT_COMPONENT_SIZE, DEFAULT_TOP_K};
use crate::retrieval::LiveConfig;

pub const DEFAULT_RESULTS_PER_QUERY: usize = 10;

/// Which search backend serves the pipeline.
#[derive(Debug, Clone, PartialEq)]
pub enum Backend {
    /// Offline corpus rooted at the given directory.
    Fixture(PathBuf),
    Live(LiveConfig),
}

/// Everything the pipeline needs for one run.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub backend: Backend,
    pub results_per_query: usize,
    pub component_size: usize,
    pub policy: SelectionPolicy,
    pub dedup: DedupConfig,
    /// None = bundled lexicon.
    pub lexicon_path: Option<PathBuf>,
    /// None = bundled concept tree.
    pub tree_path: Option<PathBuf>,
    /// Concepts used when no tree node matches the query keywords.
    pub default_concepts: Vec<String>,
    /// Sentences of context added after a keyword-search answer.
    pub context_sentences: usize,
    /// External command template; `{}` is replaced with a file holding
    /// the output text.
    pub speech_out_command: Option<String>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            backend: Backend::Fixture(PathBuf::from("fixtures/corpus")),
            results_per_query: DEFAULT_RESULTS_PER_QUERY,
            component_size: DEFAULT_COMPONENT_SIZE,
            policy: SelectionPolicy::TopK(DEFAULT_TOP_K),
            dedup: DedupConfig::default(),
            lexicon_path: None,
            tree_path: None,
            default_concepts: vec![
                "personal".to_string(),
                "career".to_string(),
                "achievements".to_string(),
            ],
            context_sentences: 0,
            speech_out_command: None,
        }
    }
}

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("config line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

impl PipelineConfig {
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Parses `key = value` lines over the defaults.
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut config = Self::default();
        // live keys may arrive in any order; collected then assembled
        let mut endpoint_url: Option<String> = None;
        let mut result_selector: Option<String> = None;
        let mut timeout_seconds: f64 = 10.0;
        let mut want_live = false;

        for (idx, raw_line) in text.lines().enumerate() {
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |reason: String| ConfigError::Parse {
                line: idx + 1,
                reason,
            };
            let Some((key, value)) = line.split_once('=') else {
                return Err(err(format!("expected key = value, got {line:?}")));
            };
            let key = key.trim();
            let value = value.trim();
            match key {
                "backend" => match parse_backend(value) {
                    Ok(Some(backend)) => config.backend = backend,
                    Ok(None) => want_live = true,
                    Err(reason) => return Err(err(reason)),
                },
                "search.results_per_query" => {
                    config.results_per_query = parse_positive(value).map_err(err)?;
                }
                "search.endpoint_url" => endpoint_url = Some(value.to_string()),
                "search.result_selector" => result_selector = Some(value.to_string()),
                "search.timeout_seconds" => {
                    timeout_seconds = value
                        .parse::<f64>()
                        .ok()
                        .filter(|t| *t > 0.0)
                        .ok_or_else(|| err(format!("bad timeout {value:?}")))?;
                }
                "extraction.component_size" => {
                    config.component_size = parse_positive(value).map_err(err)?;
                }
                "extraction.policy" => {
                    config.policy = parse_policy(value, policy_k(config.policy)).map_err(err)?;
                }
                "extraction.k" => {
                    let k = parse_positive(value).map_err(err)?;
                    if let SelectionPolicy::TopK(_) = config.policy {
                        config.policy = SelectionPolicy::TopK(k);
                    }
                }
                "dedup.overlap_fraction" => {
                    config.dedup.overlap_fraction = value
                        .parse::<f64>()
                        .ok()
                        .filter(|f| *f > 0.0 && *f <= 1.0)
                        .ok_or_else(|| err(format!("overlap fraction {value:?} not in (0, 1]")))?;
                }
                "dedup.threshold_mode" => {
                    config.dedup.threshold_mode = parse_threshold_mode(value).map_err(err)?;
                }
                "dedup.fixed_threshold" => {
                    config.dedup.fixed_threshold = value
                        .parse::<f64>()
                        .ok()
                        .filter(|f| *f > 0.0 && *f <= 1.0)
                        .ok_or_else(|| err(format!("threshold {value:?} not in (0, 1]")))?;
                }
                "lexicon.path" => config.lexicon_path = Some(PathBuf::from(value)),
                "tree.path" => config.tree_path = Some(PathBuf::from(value)),
                "tree.default_concepts" => {
                    config.default_concepts = value
                        .split(',')
                        .map(|c| c.trim().to_lowercase())
                        .filter(|c| !c.is_empty())
                        .collect();
                }
                "answer.context_sentences" => {
                    config.context_sentences = value
                        .parse()
                        .map_err(|_| err(format!("bad sentence count {value:?}")))?;
                }
                "speech.out_command" => config.speech_out_command = Some(value.to_string()),
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }

        if want_live || endpoint_url.is_some() {
            let endpoint_url = endpoint_url
                .ok_or_else(|| ConfigError::Invalid("live backend needs search.endpoint_url".into()))?;
            config.backend = Backend::Live(LiveConfig {
                endpoint_url,
                result_selector: result_selector.unwrap_or_else(|| "a".to_string()),
                timeout_seconds,
            });
        }
        Ok(config)
    }

    /// Structural checks the parser cannot do: referenced paths exist.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if let Backend::Fixture(path) = &self.backend {
            if !path.join("manifest.tsv").is_file() {
                return Err(ConfigError::Invalid(format!(
                    "fixture corpus {} has no manifest.tsv",
                    path.display()
                )));
            }
        }
        if let Some(path) = &self.lexicon_path {
            if !path.is_file() {
                return Err(ConfigError::Invalid(format!(
                    "lexicon file {} does not exist",
                    path.display()
                )));
            }
        }
        if let Some(path) = &self.tree_path {
            if !path.is_file() {
                return Err(ConfigError::Invalid(format!(
                    "tree file {} does not exist",
                    path.display()
                )));
            }
        }
        if self.default_concepts.is_empty() {
            return Err(ConfigError::Invalid("default concept list is empty".into()));
        }
        Ok(())
    }
}

fn policy_k(policy: SelectionPolicy) -> usize {
    match policy {
        SelectionPolicy::TopK(k) => k,
        SelectionPolicy::AboveAverage => DEFAULT_TOP_K,
    }
}

/// `fixture:PATH` or `live` (live details come from the search.* keys).
pub fn parse_backend(value: &str) -> Result<Option<Backend>, String> {
    if let Some(path) = value.strip_prefix("fixture:") {
        if path.is_empty() {
            return Err("fixture backend needs a path: fixture:PATH".into());
        }
        return Ok(Some(Backend::Fixture(PathBuf::from(path))));
    }
    if value == "live" {
        return Ok(None);
    }
    Err(format!("unknown backend {value:?}; expected fixture:PATH or live"))
}

pub fn parse_policy(value: &str, k: usize) -> Result<SelectionPolicy, String> {
    match value {
        "topk" => Ok(SelectionPolicy::TopK(k)),
        "above_average" => Ok(SelectionPolicy::AboveAverage),
        other => Err(format!("unknown policy {other:?}; expected topk or above_average")),
    }
}

pub fn parse_threshold_mode(value: &str) -> Result<ThresholdMode, String> {
    match value {
        "fixed" => Ok(ThresholdMode::Fixed),
        "doc_average" => Ok(ThresholdMode::DocumentAverage),
        other => Err(format!("unknown threshold mode {other:?}; expected fixed or doc_average")),
    }
}

fn parse_positive(value: &str) -> Result<usize, String> {
    value
        .parse::<usize>()
        .ok()
        .filter(|v| *v >= 1)
        .ok_or_else(|| format!("expected a positive integer, got {value:?}"))
}
