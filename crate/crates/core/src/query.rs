//! Query frontend: tokenization, lexicon tagging, keyword extraction and
//! the keyword-search vs concept-wise split.

use thiserror::Error;

use crate::lexicon::{LexClass, Lexicon};

/// Grammatical class assigned to a token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tag {
    Noun,
    Pronoun,
    WhWord,
    Other,
}

/// A token plus its tag. `normalized` is always the lowercased surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaggedToken {
    pub surface: String,
    pub normalized: String,
    pub tag: Tag,
}

/// Noun and pronoun keywords of a query, normalized, deduplicated,
/// query order preserved. The two sets are disjoint.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KeywordSet {
    pub nouns: Vec<String>,
    pub pronouns: Vec<String>,
}

impl KeywordSet {
    pub fn is_empty(&self) -> bool {
        self.nouns.is_empty() && self.pronouns.is_empty()
    }

    /// Total number of distinct keywords.
    pub fn len(&self) -> usize {
        self.nouns.len() + self.pronouns.len()
    }

    /// Nouns followed by pronouns, in query order.
    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.nouns
            .iter()
            .map(String::as_str)
            .chain(self.pronouns.iter().map(String::as_str))
    }

    /// The string handed to the search backend: all keywords, nouns
    /// first, space-joined.
    pub fn search_string(&self) -> String {
        self.iter().collect::<Vec<&str>>().join(" ")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryCategory {
    KeywordSearch,
    ConceptWise,
}

/// A fully analyzed query.
#[derive(Debug, Clone)]
pub struct Query {
    pub raw: String,
    pub tokens: Vec<TaggedToken>,
    pub keywords: KeywordSet,
    pub category: QueryCategory,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryError {
    /// The query contains no noun or pronoun keyword, so no search can
    /// be formed from it.
    #[error("query has no noun or pronoun keywords")]
    EmptyKeywords,
}

/// Splits text into surface tokens: maximal runs of alphanumeric
/// characters, with apostrophes kept word-internally. Punctuation is
/// dropped, order preserved.
pub fn tokenize(raw: &str) -> Vec<String> {
    let chars: Vec<char> = raw.chars().collect();
    let mut tokens = Vec::new();
    let mut current = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if c.is_alphanumeric() {
            current.push(c);
        } else if is_apostrophe(c)
            && !current.is_empty()
            && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric())
        {
            current.push('\'');
        } else if !current.is_empty() {
            tokens.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        tokens.push(current);
    }
    tokens
}

fn is_apostrophe(c: char) -> bool {
    c == '\'' || c == '\u{2019}'
}

/// Tags surface tokens by lexicon lookup on the normalized form.
/// Tokens absent from the lexicon default to Noun when capitalized or
/// numeric, to Other otherwise.
pub fn tag(tokens: &[String], lexicon: &Lexicon) -> Vec<TaggedToken> {
    tokens
        .iter()
        .map(|surface| {
            let normalized = surface.to_lowercase();
            let tag = match lexicon.class_of(&normalized) {
                Some(LexClass::Wh) => Tag::WhWord,
                Some(LexClass::Pronoun) => Tag::Pronoun,
                Some(LexClass::Stop) => Tag::Other,
                None => {
                    if is_capitalized(surface) || is_numeric(surface) {
                        Tag::Noun
                    } else {
                        Tag::Other
                    }
                }
            };
            TaggedToken {
                surface: surface.clone(),
                normalized,
                tag,
            }
        })
        .collect()
}

fn is_capitalized(surface: &str) -> bool {
    surface.chars().next().is_some_and(char::is_uppercase)
}

fn is_numeric(surface: &str) -> bool {
    !surface.is_empty() && surface.chars().all(|c| c.is_ascii_digit())
}

/// KeywordSearch iff any token is a wh-word, otherwise ConceptWise.
pub fn categorize(tokens: &[TaggedToken]) -> QueryCategory {
    if tokens.iter().any(|t| t.tag == Tag::WhWord) {
        QueryCategory::KeywordSearch
    } else {
        QueryCategory::ConceptWise
    }
}

/// Collects normalized noun and pronoun tokens, deduplicated, in query
/// order. Errors when neither set ends up nonempty.
pub fn extract_keywords(tokens: &[TaggedToken]) -> Result<KeywordSet, QueryError> {
    let mut set = KeywordSet::default();
    for token in tokens {
        let bucket = match token.tag {
            Tag::Noun => &mut set.nouns,
            Tag::Pronoun => &mut set.pronouns,
            Tag::WhWord | Tag::Other => continue,
        };
        if token.normalized.is_empty() {
            continue;
        }
        if !bucket.contains(&token.normalized) {
            bucket.push(token.normalized.clone());
        }
    }
    if set.is_empty() {
        return Err(QueryError::EmptyKeywords);
    }
    Ok(set)
}

/// Runs the whole frontend over a raw query.
pub fn analyze(raw: &str, lexicon: &Lexicon) -> Result<Query, QueryError> {
    let tokens = tag(&tokenize(raw), lexicon);
    let category = categorize(&tokens);
    let keywords = extract_keywords(&tokens)?;
    Ok(Query {
        raw: raw.to_string(),
        tokens,
        keywords,
        category,
    })
}

impl Query {
    /// A tagged, categorized query whose keyword extraction failed —
    /// kept around so failure reports still show the analysis.
    pub fn unanswerable(raw: &str, lexicon: &Lexicon) -> Self {
        let tokens = tag(&tokenize(raw), lexicon);
        let category = categorize(&tokens);
        Query {
            raw: raw.to_string(),
            tokens,
            keywords: KeywordSet::default(),
            category,
        }
    }
}
