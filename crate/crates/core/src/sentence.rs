//! Sentence segmentation over converted text.
//!
//! Splits on sentence-final punctuation (`.` `!` `?`) followed by
//! whitespace or end of input, and on blank lines. A short abbreviation
//! list plus a single-initial rule suppress false splits. Sentences come
//! back trimmed with inner whitespace collapsed; empties are dropped.

/// Abbreviations (without the dot) that do not end a sentence.
const ABBREVIATIONS: [&str; 12] = [
    "mr", "mrs", "ms", "dr", "prof", "sr", "jr", "st", "vs", "no", "etc", "fig",
];

pub fn segment_sentences(text: &str) -> Vec<String> {
    let mut sentences = Vec::new();
    for block in text.split("\n\n") {
        split_block(block, &mut sentences);
    }
    sentences
}

fn split_block(block: &str, out: &mut Vec<String>) {
    let chars: Vec<char> = block.chars().collect();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if matches!(c, '.' | '!' | '?') {
            // absorb a run of terminators ("?!", "...")
            let mut end = i;
            while end + 1 < chars.len() && matches!(chars[end + 1], '.' | '!' | '?') {
                end += 1;
            }
            let at_boundary = chars.get(end + 1).is_none_or(|n| n.is_whitespace());
            let lone_period = end == i && c == '.';
            if at_boundary && !(lone_period && is_abbreviation(&chars[start..i])) {
                push_sentence(&chars[start..=end], out);
                start = end + 1;
            }
            i = end + 1;
        } else {
            i += 1;
        }
    }
    if start < chars.len() {
        push_sentence(&chars[start..], out);
    }
}

/// True when the word ending right before the dot is a listed
/// abbreviation.
fn is_abbreviation(before: &[char]) -> bool {
    let word: String = before
        .iter()
        .rev()
        .take_while(|c| c.is_alphanumeric())
        .collect::<Vec<_>>()
        .into_iter()
        .rev()
        .collect();
    !word.is_empty() && ABBREVIATIONS.contains(&word.to_lowercase().as_str())
}

fn push_sentence(chars: &[char], out: &mut Vec<String>) {
    let text: String = chars.iter().collect();
    let normalized = text.split_whitespace().collect::<Vec<_>>().join(" ");
    if !normalized.is_empty() {
        out.push(normalized);
    }
}
