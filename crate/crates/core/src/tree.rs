//! Concept tree: a persisted hierarchy mapping domain entities to the
//! concept words used to expand concept-wise searches.
//!
//! The on-disk format is a JSON document restricted to nested objects of
//! the shape `{label, aliases, concepts, children}`; see the bundled
//! `fixtures/tree/cricket_hockey.tree`.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::query::KeywordSet;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConceptNode {
    pub label: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub aliases: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub concepts: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<ConceptNode>,
}

/// A validated concept hierarchy. Immutable after load.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptTree {
    root: ConceptNode,
}

#[derive(Debug, Error)]
pub enum TreeError {
    #[error("tree parse error: {0}")]
    Parse(String),
    #[error("tree validation error at node {node:?}: {reason}")]
    Validation { node: String, reason: String },
    #[error("cannot read tree file {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// One concept-expanded search: every base noun keyword plus exactly one
/// concept word per search string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpandedQuery {
    pub base_keywords: KeywordSet,
    /// `(concept_word, search_string)` pairs in tree order.
    pub concept_queries: Vec<(String, String)>,
}

impl ExpandedQuery {
    /// Keyword set for downstream matching: base nouns plus the concept
    /// words (counted as nouns), pronouns unchanged.
    pub fn matching_keywords(&self) -> KeywordSet {
        let mut nouns = self.base_keywords.nouns.clone();
        for (concept, _) in &self.concept_queries {
            if !nouns.contains(concept) {
                nouns.push(concept.clone());
            }
        }
        KeywordSet {
            nouns,
            pronouns: self.base_keywords.pronouns.clone(),
        }
    }
}

impl ConceptTree {
    /// Parses and validates tree text.
    pub fn parse(text: &str) -> Result<Self, TreeError> {
        let root: ConceptNode =
            serde_json::from_str(text).map_err(|e| TreeError::Parse(e.to_string()))?;
        validate(&root)?;
        Ok(Self { root })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, TreeError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| TreeError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    /// The tree shipped with the crate, covering the cricket and hockey
    /// player/ground/series branches.
    pub fn bundled() -> Self {
        Self::parse(include_str!(concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/../../fixtures/tree/cricket_hockey.tree"
        )))
        .expect("bundled tree is valid")
    }

    /// Serializes back to the on-disk format.
    pub fn to_text(&self) -> String {
        serde_json::to_string_pretty(&self.root).expect("tree serializes")
    }

    pub fn root(&self) -> &ConceptNode {
        &self.root
    }

    /// Finds the deepest node whose label or alias matches a noun keyword
    /// and returns its concepts. A multi-word label matches when all of
    /// its words appear among the keywords. Ties at equal depth go to the
    /// first node in pre-order. A matching node without concepts of its
    /// own inherits from the nearest ancestor that has any (its branch
    /// root). No match at all falls back to `defaults`.
    pub fn lookup(&self, keywords: &KeywordSet, defaults: &[String]) -> Vec<String> {
        struct Best {
            depth: usize,
            order: usize,
            concepts: Vec<String>,
        }

        fn walk(
            node: &ConceptNode,
            ancestors: &mut Vec<Vec<String>>,
            keywords: &KeywordSet,
            depth: usize,
            order: &mut usize,
            best: &mut Option<Best>,
        ) {
            let this_order = *order;
            *order += 1;
            if node_matches(node, keywords) {
                let concepts = if node.concepts.is_empty() {
                    ancestors
                        .iter()
                        .rev()
                        .find(|c| !c.is_empty())
                        .cloned()
                        .unwrap_or_default()
                } else {
                    node.concepts.clone()
                };
                let better = match best {
                    None => true,
                    Some(b) => depth > b.depth,
                };
                if better {
                    *best = Some(Best {
                        depth,
                        order: this_order,
                        concepts,
                    });
                }
            }
            ancestors.push(node.concepts.clone());
            for child in &node.children {
                walk(child, ancestors, keywords, depth + 1, order, best);
            }
            ancestors.pop();
        }

        let mut best = None;
        let mut order = 0;
        walk(&self.root, &mut Vec::new(), keywords, 0, &mut order, &mut best);
        match best {
            Some(b) if !b.concepts.is_empty() => {
                debug_assert!(b.order < order);
                b.concepts
            }
            // no match, or a match with no concepts anywhere on its path
            _ => defaults.to_vec(),
        }
    }
}

fn node_matches(node: &ConceptNode, keywords: &KeywordSet) -> bool {
    std::iter::once(node.label.as_str())
        .chain(node.aliases.iter().map(String::as_str))
        .any(|name| name_matches(name, keywords))
}

/// Every word of the (possibly multi-word) name must appear among the
/// noun keywords.
fn name_matches(name: &str, keywords: &KeywordSet) -> bool {
    let mut words = name.split_whitespace().peekable();
    words.peek().is_some()
        && name
            .split_whitespace()
            .all(|w| keywords.nouns.iter().any(|k| k == w))
}

fn validate(node: &ConceptNode) -> Result<(), TreeError> {
    if node.label.trim().is_empty() {
        return Err(TreeError::Validation {
            node: node.label.clone(),
            reason: "empty label".into(),
        });
    }
    if node.label != node.label.to_lowercase() {
        return Err(TreeError::Validation {
            node: node.label.clone(),
            reason: "label must be lowercase".into(),
        });
    }
    for alias in &node.aliases {
        if alias.trim().is_empty() || *alias != alias.to_lowercase() {
            return Err(TreeError::Validation {
                node: node.label.clone(),
                reason: format!("alias {alias:?} must be nonempty lowercase"),
            });
        }
    }
    for (i, concept) in node.concepts.iter().enumerate() {
        if concept.trim().is_empty() {
            return Err(TreeError::Validation {
                node: node.label.clone(),
                reason: "empty concept word".into(),
            });
        }
        if node.concepts[..i].contains(concept) {
            return Err(TreeError::Validation {
                node: node.label.clone(),
                reason: format!("duplicate concept word {concept:?}"),
            });
        }
    }
    for (i, child) in node.children.iter().enumerate() {
        if node.children[..i].iter().any(|c| c.label == child.label) {
            return Err(TreeError::Validation {
                node: child.label.clone(),
                reason: "duplicate sibling label".into(),
            });
        }
        validate(child)?;
    }
    Ok(())
}

/// Builds one search string per concept word: the space-joined base
/// nouns followed by the concept word.
pub fn expand(keywords: &KeywordSet, concepts: &[String]) -> ExpandedQuery {
    let base = keywords.nouns.join(" ");
    let concept_queries = concepts
        .iter()
        .map(|concept| {
            let search = if base.is_empty() {
                concept.clone()
            } else {
                format!("{base} {concept}")
            };
            (concept.clone(), search)
        })
        .collect();
    ExpandedQuery {
        base_keywords: keywords.clone(),
        concept_queries,
    }
}
