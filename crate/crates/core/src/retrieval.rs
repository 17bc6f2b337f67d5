//! Document retrieval: a pluggable search backend, HTML-to-text
//! conversion and per-document latency capture.
//!
//! The fixture backend resolves queries from an on-disk corpus manifest
//! and is fully deterministic, including its latencies, which are
//! derived from content size instead of the wall clock so that repeated
//! runs produce identical reports. The live backend is a thin HTTP
//! client behind the same interface and uses real timings.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::html::html_to_text;
use crate::sentence::segment_sentences;

/// One ranked search hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub query_string: String,
    /// 1 = top result.
    pub rank: usize,
    /// URL (live backend) or corpus-relative path (fixture backend).
    pub location: String,
    pub title: Option<String>,
}

/// A fetched, converted, sentence-segmented document.
#[derive(Debug, Clone)]
pub struct Document {
    pub source: SearchResult,
    pub sentences: Vec<String>,
    pub fetch_latency: f64,
    pub convert_latency: f64,
    pub fault: bool,
}

#[derive(Debug, Error)]
pub enum RetrievalError {
    #[error("search backend unavailable: {0}")]
    BackendUnavailable(String),
    #[error("no results for query {0:?}")]
    NoResults(String),
}

pub trait SearchBackend {
    /// At most `k` results, rank-ordered starting at 1.
    fn search(&self, query_string: &str, k: usize) -> Result<Vec<SearchResult>, RetrievalError>;

    /// Raw page bytes for a previously returned result.
    fn fetch(&self, result: &SearchResult) -> Result<Vec<u8>, RetrievalError>;

    /// Whether latencies should be synthesized deterministically from
    /// content size instead of measured.
    fn synthetic_timing(&self) -> bool {
        false
    }
}

/// Offline corpus backend driven by `manifest.tsv`:
/// `query_string<TAB>rank<TAB>relative_path<TAB>title` per line.
pub struct FixtureBackend {
    root: PathBuf,
    manifest: HashMap<String, Vec<SearchResult>>,
}

impl FixtureBackend {
    pub fn open(root: impl AsRef<Path>) -> Result<Self, RetrievalError> {
        let root = root.as_ref().to_path_buf();
        let manifest_path = root.join("manifest.tsv");
        let text = std::fs::read_to_string(&manifest_path).map_err(|e| {
            RetrievalError::BackendUnavailable(format!(
                "cannot read {}: {e}",
                manifest_path.display()
            ))
        })?;
        let mut manifest: HashMap<String, Vec<SearchResult>> = HashMap::new();
        for (idx, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() < 3 {
                return Err(RetrievalError::BackendUnavailable(format!(
                    "manifest line {}: expected query_string<TAB>rank<TAB>path[<TAB>title]",
                    idx + 1
                )));
            }
            let rank: usize = fields[1].parse().map_err(|_| {
                RetrievalError::BackendUnavailable(format!(
                    "manifest line {}: bad rank {:?}",
                    idx + 1,
                    fields[1]
                ))
            })?;
            manifest
                .entry(fields[0].to_string())
                .or_default()
                .push(SearchResult {
                    query_string: fields[0].to_string(),
                    rank,
                    location: fields[2].to_string(),
                    title: fields.get(3).map(|t| t.to_string()).filter(|t| !t.is_empty()),
                });
        }
        for (query, results) in &mut manifest {
            results.sort_by_key(|r| r.rank);
            for (i, result) in results.iter().enumerate() {
                if result.rank != i + 1 {
                    return Err(RetrievalError::BackendUnavailable(format!(
                        "manifest ranks for {query:?} are not contiguous from 1"
                    )));
                }
            }
        }
        Ok(Self { root, manifest })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }
}

impl SearchBackend for FixtureBackend {
    fn search(&self, query_string: &str, k: usize) -> Result<Vec<SearchResult>, RetrievalError> {
        let results = self
            .manifest
            .get(query_string)
            .filter(|r| !r.is_empty())
            .ok_or_else(|| RetrievalError::NoResults(query_string.to_string()))?;
        Ok(results.iter().take(k).cloned().collect())
    }

    fn fetch(&self, result: &SearchResult) -> Result<Vec<u8>, RetrievalError> {
        std::fs::read(self.root.join(&result.location)).map_err(|e| {
            RetrievalError::BackendUnavailable(format!("cannot read {}: {e}", result.location))
        })
    }

    fn synthetic_timing(&self) -> bool {
        true
    }
}

/// Configuration for the live search backend.
#[derive(Debug, Clone, PartialEq)]
pub struct LiveConfig {
    /// Search endpoint; `{query}` is replaced with the URL-encoded query,
    /// otherwise the query is appended as a `q` parameter.
    pub endpoint_url: String,
    /// Selector for result links: `tag`, `.class`, `#id`, `tag.class` or
    /// `tag#id`. Matching elements must be anchors carrying `href`.
    pub result_selector: String,
    pub timeout_seconds: f64,
}

/// Thin HTTP client implementing the backend interface against a
/// configurable search endpoint. Exercised manually, not by tests.
pub struct LiveBackend {
    config: LiveConfig,
    client: reqwest::blocking::Client,
}

impl LiveBackend {
    pub fn new(config: LiveConfig) -> Result<Self, RetrievalError> {
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs_f64(config.timeout_seconds.max(0.001)))
            .build()
            .map_err(|e| RetrievalError::BackendUnavailable(e.to_string()))?;
        Ok(Self { config, client })
    }

    fn get(&self, url: &str) -> Result<Vec<u8>, RetrievalError> {
        let response = self
            .client
            .get(url)
            .send()
            .map_err(|e| RetrievalError::BackendUnavailable(e.to_string()))?;
        if !response.status().is_success() {
            return Err(RetrievalError::BackendUnavailable(format!(
                "{url}: HTTP {}",
                response.status()
            )));
        }
        response
            .bytes()
            .map(|b| b.to_vec())
            .map_err(|e| RetrievalError::BackendUnavailable(e.to_string()))
    }
}

impl SearchBackend for LiveBackend {
    fn search(&self, query_string: &str, k: usize) -> Result<Vec<SearchResult>, RetrievalError> {
        let encoded = urlencode(query_string);
        let url = if self.config.endpoint_url.contains("{query}") {
            self.config.endpoint_url.replace("{query}", &encoded)
        } else if self.config.endpoint_url.contains('?') {
            format!("{}&q={encoded}", self.config.endpoint_url)
        } else {
            format!("{}?q={encoded}", self.config.endpoint_url)
        };
        let body = self.get(&url)?;
        let html = String::from_utf8_lossy(&body);
        let links = extract_links(&html, &self.config.result_selector);
        if links.is_empty() {
            return Err(RetrievalError::NoResults(query_string.to_string()));
        }
        Ok(links
            .into_iter()
            .take(k)
            .enumerate()
            .map(|(i, (href, title))| SearchResult {
                query_string: query_string.to_string(),
                rank: i + 1,
                location: href,
                title,
            })
            .collect())
    }

    fn fetch(&self, result: &SearchResult) -> Result<Vec<u8>, RetrievalError> {
        self.get(&result.location)
    }
}

/// Fetches, converts and segments one search result. Failures and empty
/// pages become fault documents instead of errors so one bad page cannot
/// abort a multi-document run.
pub fn fetch_document(result: &SearchResult, backend: &dyn SearchBackend) -> Document {
    let fetch_start = Instant::now();
    let fetched = backend.fetch(result);
    let measured_fetch = fetch_start.elapsed().as_secs_f64();

    match fetched {
        Ok(bytes) => {
            let convert_start = Instant::now();
            let text = html_to_text(&String::from_utf8_lossy(&bytes));
            let sentences = segment_sentences(&text);
            let measured_convert = convert_start.elapsed().as_secs_f64();
            let (fetch_latency, convert_latency) = if backend.synthetic_timing() {
                synthetic_latencies(bytes.len())
            } else {
                (measured_fetch, measured_convert)
            };
            let fault = sentences.is_empty();
            Document {
                source: result.clone(),
                sentences,
                fetch_latency,
                convert_latency,
                fault,
            }
        }
        Err(_) => {
            let (fetch_latency, convert_latency) = if backend.synthetic_timing() {
                synthetic_latencies(0)
            } else {
                (measured_fetch, 0.0)
            };
            Document {
                source: result.clone(),
                sentences: Vec::new(),
                fetch_latency,
                convert_latency,
                fault: true,
            }
        }
    }
}

/// Deterministic latencies for the fixture backend: a nominal 1 MB/s
/// fetch over a 15 ms floor, and a 20 MB/s conversion over a 2 ms floor.
fn synthetic_latencies(byte_len: usize) -> (f64, f64) {
    let bytes = byte_len as f64;
    (0.015 + bytes / 1.0e6, 0.002 + bytes / 2.0e7)
}

fn urlencode(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for b in s.bytes() {
        match b {
            b'A'..=b'Z' | b'a'..=b'z' | b'0'..=b'9' | b'-' | b'_' | b'.' | b'~' => {
                out.push(b as char)
            }
            b' ' => out.push('+'),
            _ => out.push_str(&format!("%{b:02X}")),
        }
    }
    out
}

/// Minimal result-link extraction: returns `(href, text)` for each
/// anchor matched by a single compound selector.
fn extract_links(html: &str, selector: &str) -> Vec<(String, Option<String>)> {
    let (want_tag, want_class, want_id) = parse_selector(selector);
    let mut links = Vec::new();
    let mut i = 0;
    let bytes = html.as_bytes();
    while let Some(open) = html[i..].find('<') {
        let start = i + open;
        let Some(close) = html[start..].find('>') else { break };
        let tag_src = &html[start + 1..start + close];
        i = start + close + 1;
        let name: String = tag_src
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric())
            .map(|c| c.to_ascii_lowercase())
            .collect();
        if name.is_empty() || tag_src.starts_with('/') {
            continue;
        }
        if let Some(tag) = &want_tag {
            if &name != tag {
                continue;
            }
        }
        if name != "a" {
            continue; // only anchors carry the href we need
        }
        if let Some(class) = &want_class {
            if !attr(tag_src, "class").is_some_and(|v| v.split_whitespace().any(|c| c == class)) {
                continue;
            }
        }
        if let Some(id) = &want_id {
            if attr(tag_src, "id").as_deref() != Some(id.as_str()) {
                continue;
            }
        }
        let Some(href) = attr(tag_src, "href") else { continue };
        if !href.starts_with("http") {
            continue;
        }
        // anchor text up to the closing tag, tags stripped
        let text_end = html[i..].find("</a").map(|p| i + p).unwrap_or(i);
        let text = html_to_text(&html[i..text_end]);
        links.push((href, (!text.is_empty()).then_some(text)));
        let _ = bytes;
    }
    links
}

/// Splits `tag.class` / `tag#id` / `.class` / `#id` / `tag`.
fn parse_selector(selector: &str) -> (Option<String>, Option<String>, Option<String>) {
    let s = selector.trim();
    if let Some(pos) = s.find(['.', '#']) {
        let tag = (pos > 0).then(|| s[..pos].to_lowercase());
        let rest = &s[pos..];
        if let Some(class) = rest.strip_prefix('.') {
            (tag, Some(class.to_string()), None)
        } else {
            (tag, None, rest.strip_prefix('#').map(str::to_string))
        }
    } else {
        (Some(s.to_lowercase()), None, None)
    }
}

fn attr(tag_src: &str, name: &str) -> Option<String> {
    let lower = tag_src.to_lowercase();
    let pos = lower.find(&format!("{name}="))?;
    let rest = &tag_src[pos + name.len() + 1..];
    let mut chars = rest.chars();
    match chars.next()? {
        q @ ('"' | '\'') => {
            let body: String = chars.take_while(|&c| c != q).collect();
            Some(body)
        }
        first => {
            let mut body = String::new();
            body.push(first);
            body.extend(chars.take_while(|c| !c.is_whitespace() && *c != '>'));
            Some(body)
        }
    }
}
