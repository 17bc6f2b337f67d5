//! Synthetic inputs shared by the benchmarks.

use gist_core::{KeywordSet, LineKeywords};

/// A deterministic xorshift generator so benches need no RNG crate.
pub struct SmallRng(u64);

impl SmallRng {
    pub fn new(seed: u64) -> Self {
        Self(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 ^= self.0 << 13;
        self.0 ^= self.0 >> 7;
        self.0 ^= self.0 << 17;
        self.0
    }

    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }
}

const WORDS: [&str; 16] = [
    "dhyan", "chand", "hockey", "india", "goal", "match", "stadium", "career", "olympic",
    "gold", "captain", "wicket", "series", "trophy", "eden", "mumbai",
];

/// Sentences built from a small vocabulary, roughly query-shaped.
pub fn synthetic_sentences(count: usize, rng: &mut SmallRng) -> Vec<String> {
    (0..count)
        .map(|_| {
            let len = 6 + rng.below(10);
            let words: Vec<&str> = (0..len).map(|_| WORDS[rng.below(WORDS.len())]).collect();
            let mut sentence = words.join(" ");
            sentence.push('.');
            sentence
        })
        .collect()
}

pub fn synthetic_keywords() -> KeywordSet {
    KeywordSet {
        nouns: vec!["dhyan".into(), "chand".into(), "career".into(), "stadium".into()],
        pronouns: vec!["he".into(), "his".into()],
    }
}

/// Line-keyword lists with planted duplication for the dedup benches.
pub fn synthetic_lines(count: usize, rng: &mut SmallRng) -> Vec<LineKeywords> {
    (0..count)
        .map(|i| {
            let len = 1 + rng.below(5);
            let keywords: Vec<String> = (0..len)
                .map(|_| WORDS[rng.below(8)].to_string())
                .collect::<std::collections::BTreeSet<String>>()
                .into_iter()
                .collect();
            LineKeywords {
                line_index: i,
                text: format!("line {i}"),
                keywords,
            }
        })
        .collect()
}
