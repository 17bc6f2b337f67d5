//! Evaluation arithmetic and report assembly: opinion scores,
//! summarization ratios, precision, latency rates, fault counts, and a
//! tab-separated per-category report.

use thiserror::Error;

/// Everything measured for one evaluated query.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub query_id: String,
    pub category: String,
    /// Per-document conversion/extraction latencies, seconds.
    pub doc_extraction_latency: Vec<f64>,
    /// Per-document retrieval latencies, seconds (same length).
    pub info_retrieval_latency: Vec<f64>,
    pub summary_lines: usize,
    pub original_lines: usize,
    /// Gold label and produced output: counted into precision.
    pub relevant: bool,
    pub fault_docs: usize,
    pub opinion_scores: Vec<f64>,
    /// Mean of per-document summarization ratios for this query.
    pub effective_ratio: f64,
}

/// Aggregated figures for one query category.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryReport {
    pub category: String,
    pub query_count: usize,
    pub doc_extraction_rate: f64,
    pub info_retrieval_rate: f64,
    pub latency_minutes: f64,
    pub fault_count: usize,
    pub mos: Option<f64>,
    pub precision: f64,
    pub summarization_ratio: f64,
}

/// One row of the labeled query file driving an evaluation run.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledQuery {
    pub query_id: String,
    pub query_text: String,
    pub category: String,
    pub expected_relevant: bool,
    pub opinion_scores: Vec<f64>,
}

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("opinion score list is empty")]
    EmptyScores,
    #[error("{0}")]
    Domain(String),
    #[error("all latencies are zero; rates are undefined")]
    NoUsableLatencies,
}

/// Mean opinion score over a 0–10 scale.
pub fn mos(scores: &[f64]) -> Result<f64, MetricsError> {
    if scores.is_empty() {
        return Err(MetricsError::EmptyScores);
    }
    for &s in scores {
        if !(0.0..=10.0).contains(&s) {
            return Err(MetricsError::Domain(format!("opinion score {s} outside 0..=10")));
        }
    }
    Ok(scores.iter().sum::<f64>() / scores.len() as f64)
}

/// Lines in the summary divided by lines in the original document.
pub fn summarization_ratio(summary_lines: usize, original_lines: usize) -> Result<f64, MetricsError> {
    if original_lines == 0 {
        return Err(MetricsError::Domain("original document has zero lines".into()));
    }
    if summary_lines > original_lines {
        return Err(MetricsError::Domain(format!(
            "summary ({summary_lines} lines) exceeds original ({original_lines})"
        )));
    }
    Ok(summary_lines as f64 / original_lines as f64)
}

/// Relevant documents retrieved over total documents retrieved.
pub fn precision(relevant_retrieved: usize, total_retrieved: usize) -> Result<f64, MetricsError> {
    if total_retrieved == 0 {
        return Err(MetricsError::Domain("precision needs at least one retrieval".into()));
    }
    if relevant_retrieved > total_retrieved {
        return Err(MetricsError::Domain(format!(
            "relevant count {relevant_retrieved} exceeds total {total_retrieved}"
        )));
    }
    Ok(relevant_retrieved as f64 / total_retrieved as f64)
}

/// The three latency figures of a category report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSummary {
    /// Mean of 1/latency over per-document extraction latencies, 1/s.
    pub doc_extraction_rate: f64,
    /// Mean of 1/latency over per-document retrieval latencies, 1/s.
    pub info_retrieval_rate: f64,
    /// Mean of per-document summed latencies, minutes.
    pub latency_minutes: f64,
    /// Zero latencies left out of the reciprocal means.
    pub zero_latencies_excluded: usize,
}

/// Reciprocal-mean rates and the mean summed latency. Zero latencies
/// would make the reciprocals infinite, so they are excluded from the
/// rate means and surfaced in the returned count; the summed-latency
/// mean keeps every document.
pub fn mean_rates(records: &[RunRecord]) -> Result<RateSummary, MetricsError> {
    let mut doc_sum = 0.0;
    let mut doc_n = 0usize;
    let mut info_sum = 0.0;
    let mut info_n = 0usize;
    let mut total_sum = 0.0;
    let mut total_n = 0usize;
    let mut excluded = 0usize;
    for record in records {
        if record.doc_extraction_latency.len() != record.info_retrieval_latency.len() {
            return Err(MetricsError::Domain(format!(
                "query {}: latency lists differ in length",
                record.query_id
            )));
        }
        for (&doc, &info) in record
            .doc_extraction_latency
            .iter()
            .zip(&record.info_retrieval_latency)
        {
            if doc < 0.0 || info < 0.0 || !doc.is_finite() || !info.is_finite() {
                return Err(MetricsError::Domain(format!(
                    "query {}: latencies must be finite and nonnegative",
                    record.query_id
                )));
            }
            if doc > 0.0 {
                doc_sum += 1.0 / doc;
                doc_n += 1;
            } else {
                excluded += 1;
            }
            if info > 0.0 {
                info_sum += 1.0 / info;
                info_n += 1;
            } else {
                excluded += 1;
            }
            total_sum += doc + info;
            total_n += 1;
        }
    }
    if total_n == 0 {
        return Err(MetricsError::Domain("no documents to rate".into()));
    }
    if doc_n == 0 || info_n == 0 {
        return Err(MetricsError::NoUsableLatencies);
    }
    Ok(RateSummary {
        doc_extraction_rate: doc_sum / doc_n as f64,
        info_retrieval_rate: info_sum / info_n as f64,
        latency_minutes: total_sum / total_n as f64 / 60.0,
        zero_latencies_excluded: excluded,
    })
}

/// Groups records by category (first-appearance order) and reduces each
/// group to one report row.
pub fn evaluate_records(records: &[RunRecord]) -> Result<Vec<CategoryReport>, MetricsError> {
    let mut categories: Vec<&str> = Vec::new();
    for record in records {
        if !categories.contains(&record.category.as_str()) {
            categories.push(&record.category);
        }
    }
    let mut reports = Vec::new();
    for category in categories {
        let group: Vec<&RunRecord> = records.iter().filter(|r| r.category == category).collect();
        let owned: Vec<RunRecord> = group.iter().map(|r| (*r).clone()).collect();
        let rates = mean_rates(&owned)?;
        let scores: Vec<f64> = group.iter().flat_map(|r| r.opinion_scores.clone()).collect();
        let category_mos = if scores.is_empty() { None } else { Some(mos(&scores)?) };
        let relevant = group.iter().filter(|r| r.relevant).count();
        let ratio_sum: f64 = group.iter().map(|r| r.effective_ratio).sum();
        reports.push(CategoryReport {
            category: category.to_string(),
            query_count: group.len(),
            doc_extraction_rate: rates.doc_extraction_rate,
            info_retrieval_rate: rates.info_retrieval_rate,
            latency_minutes: rates.latency_minutes,
            fault_count: group.iter().map(|r| r.fault_docs).sum(),
            mos: category_mos,
            precision: precision(relevant, group.len())?,
            summarization_ratio: ratio_sum / group.len() as f64,
        });
    }
    Ok(reports)
}

/// Tab-separated report, one row per category, reals at 4 decimal
/// places so repeated runs are byte-identical.
pub fn render_report(reports: &[CategoryReport]) -> String {
    let mut out = String::from(
        "Query Category\tNo. of Queries in Category\tMean Doc. Extraction Rate (1/s)\t\
         Mean Info. Retrieval Rate (1/s)\tMean Latency Time(Min)\tFault Count\t\
         Mean Opinion Score(10)\tPrecision\tSummarization Ratio\n",
    );
    for r in reports {
        let mos_cell = match r.mos {
            Some(m) => format!("{m:.4}"),
            None => "-".to_string(),
        };
        out.push_str(&format!(
            "{}\t{}\t{:.4}\t{:.4}\t{:.4}\t{}\t{}\t{:.4}\t{:.4}\n",
            r.category,
            r.query_count,
            r.doc_extraction_rate,
            r.info_retrieval_rate,
            r.latency_minutes,
            r.fault_count,
            mos_cell,
            r.precision,
            r.summarization_ratio,
        ));
    }
    out
}

/// Per-query detail rows accompanying the category report.
pub fn render_records(records: &[RunRecord]) -> String {
    let mut out = String::from(
        "Query ID\tCategory\tDocs\tFault Docs\tSummary Lines\tOriginal Lines\t\
         Effective Ratio\tRelevant\n",
    );
    for r in records {
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{:.4}\t{}\n",
            r.query_id,
            r.category,
            r.doc_extraction_latency.len(),
            r.fault_docs,
            r.summary_lines,
            r.original_lines,
            r.effective_ratio,
            if r.relevant { 1 } else { 0 },
        ));
    }
    out
}

/// Parses the labeled query file: tab-separated
/// `query_id  query_text  category  expected_relevant  opinion_scores`,
/// the last column a comma-separated list, optional.
pub fn parse_labels(text: &str) -> Result<Vec<LabeledQuery>, MetricsError> {
    let mut queries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() < 4 {
            return Err(MetricsError::Domain(format!(
                "labels line {}: expected at least 4 tab-separated fields",
                idx + 1
            )));
        }
        let expected_relevant = match fields[3].trim() {
            "0" => false,
            "1" => true,
            other => {
                return Err(MetricsError::Domain(format!(
                    "labels line {}: expected_relevant must be 0 or 1, got {other:?}",
                    idx + 1
                )))
            }
        };
        let opinion_scores = match fields.get(4).map(|s| s.trim()) {
            None | Some("") => Vec::new(),
            Some(list) => list
                .split(',')
                .map(|s| {
                    s.trim().parse::<f64>().map_err(|_| {
                        MetricsError::Domain(format!(
                            "labels line {}: bad opinion score {s:?}",
                            idx + 1
                        ))
                    })
                })
                .collect::<Result<Vec<f64>, _>>()?,
        };
        queries.push(LabeledQuery {
            query_id: fields[0].to_string(),
            query_text: fields[1].to_string(),
            category: fields[2].to_string(),
            expected_relevant,
            opinion_scores,
        });
    }
    Ok(queries)
}
