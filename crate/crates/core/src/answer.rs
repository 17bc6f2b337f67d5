//! Keyword-search answer path: scores the sentences of the top-ranked
//! document by distinct keyword matches and returns the best sentence.

use thiserror::Error;

use crate::query::{tokenize, KeywordSet};
use crate::retrieval::Document;

/// A sentence with its keyword match count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScoredSentence {
    /// Zero-based sentence position in the document.
    pub index: usize,
    pub text: String,
    pub match_count: usize,
}

#[derive(Debug, Error)]
pub enum AnswerError {
    #[error("no sentence matches any query keyword")]
    NoAnswer,
}

/// Number of distinct keywords (nouns and pronouns alike) appearing as
/// whole tokens in the sentence, case-insensitive. Occurrence counts do
/// not matter: a keyword repeated in the sentence still counts once.
pub fn score_sentence(sentence: &str, keywords: &KeywordSet) -> usize {
    let tokens: Vec<String> = tokenize(sentence)
        .into_iter()
        .map(|t| t.to_lowercase())
        .collect();
    keywords
        .iter()
        .filter(|kw| tokens.iter().any(|t| t == *kw))
        .count()
}

/// The sentence with the highest match count; ties go to the earliest
/// sentence. A document where nothing matches yields `NoAnswer` so the
/// caller can count the fault.
pub fn best_answer(doc: &Document, keywords: &KeywordSet) -> Result<ScoredSentence, AnswerError> {
    let mut best: Option<ScoredSentence> = None;
    for (index, sentence) in doc.sentences.iter().enumerate() {
        let match_count = score_sentence(sentence, keywords);
        let better = match &best {
            Some(b) => match_count > b.match_count,
            None => true,
        };
        if better {
            best = Some(ScoredSentence {
                index,
                text: sentence.clone(),
                match_count,
            });
        }
    }
    match best {
        Some(b) if b.match_count > 0 => Ok(b),
        _ => Err(AnswerError::NoAnswer),
    }
}
