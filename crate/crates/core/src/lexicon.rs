//! Closed-class tag lexicon backing the query frontend and the
//! per-line tagging done during aggregation.
//!
//! The lexicon file is plain text, one entry per line in the form
//! `<token> <tag>` with tag in `{WH, PRON, STOP}`. Lines starting with
//! `#` are comments. Anything not listed is handled by the
//! capitalization/numeric heuristic in [`crate::query`].

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use thiserror::Error;

/// Entry class for a lexicon token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LexClass {
    Wh,
    Pronoun,
    Stop,
}

#[derive(Debug, Error)]
pub enum LexiconError {
    /// The lexicon file could not be read.
    #[error("lexicon missing: cannot read {path}: {source}")]
    LexiconMissing {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("lexicon parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Immutable token -> class table, loaded once and shared read-only.
#[derive(Debug, Clone)]
pub struct Lexicon {
    entries: HashMap<String, LexClass>,
}

impl Lexicon {
    /// Parses lexicon text. Duplicate tokens resolve by class precedence
    /// WH > PRON > STOP so a token listed twice keeps its strongest class.
    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut entries = HashMap::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let token = parts.next().unwrap().to_lowercase();
            let tag = parts.next().ok_or_else(|| LexiconError::Parse {
                line: idx + 1,
                reason: format!("missing tag after {token:?}"),
            })?;
            if parts.next().is_some() {
                return Err(LexiconError::Parse {
                    line: idx + 1,
                    reason: "expected exactly two fields".into(),
                });
            }
            let class = match tag {
                "WH" => LexClass::Wh,
                "PRON" => LexClass::Pronoun,
                "STOP" => LexClass::Stop,
                other => {
                    return Err(LexiconError::Parse {
                        line: idx + 1,
                        reason: format!("unknown tag {other:?}"),
                    })
                }
            };
            entries
                .entry(token)
                .and_modify(|existing| {
                    if rank(class) > rank(*existing) {
                        *existing = class;
                    }
                })
                .or_insert(class);
        }
        Ok(Self { entries })
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| LexiconError::LexiconMissing {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// The lexicon shipped with the crate, identical to
    /// `fixtures/lexicon/english.lex` in the repository.
    pub fn bundled() -> Self {
        Self::parse(include_str!(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../fixtures/lexicon/english.lex"
        )))
        .expect("bundled lexicon is well-formed")
    }

    /// Looks up a normalized (lowercased) token.
    pub fn class_of(&self, normalized: &str) -> Option<LexClass> {
        self.entries.get(normalized).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn rank(class: LexClass) -> u8 {
    match class {
        LexClass::Wh => 2,
        LexClass::Pronoun => 1,
        LexClass::Stop => 0,
    }
}

impl fmt::Display for LexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LexClass::Wh => write!(f, "WH"),
            LexClass::Pronoun => write!(f, "PRON"),
            LexClass::Stop => write!(f, "STOP"),
        }
    }
}
