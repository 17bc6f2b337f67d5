//! `gist` — ask questions against a document corpus and evaluate the
//! pipeline over labeled query suites.
//!
//! Exit codes: 0 success, 1 configuration/IO error, 2 the pipeline ran
//! but produced no answer or an empty summary.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use gist_core::config::{parse_backend, parse_policy, parse_threshold_mode, PipelineConfig};
use gist_core::pipeline::{AskError, Pipeline, PipelineError};
use gist_core::tree::{ConceptNode, ConceptTree};
use gist_core::{parse_labels, render_records, render_report};

#[derive(Parser)]
#[command(
    name = "gist",
    about = "Query-driven multi-document extractive summarization",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Configuration file (key = value lines).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Search backend: fixture:PATH or live.
    #[arg(long, global = true, value_name = "BACKEND")]
    backend: Option<String>,

    /// Search results fetched per query (default 10).
    #[arg(long, global = true, value_name = "N")]
    k: Option<usize>,

    /// Component selection policy: topk or above_average.
    #[arg(long, global = true, value_name = "POLICY")]
    policy: Option<String>,

    /// Dedup threshold mode: fixed or doc_average.
    #[arg(long = "threshold-mode", global = true, value_name = "MODE")]
    threshold_mode: Option<String>,

    /// Speak the output: external command template, {} = text file path.
    #[arg(long, global = true, value_name = "CMD")]
    speak: Option<String>,

    /// Read the query from a transcript file instead of the argument.
    #[arg(long = "transcript-file", global = true, value_name = "PATH")]
    transcript_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Answer a question or summarize an entity.
    Ask {
        /// The query text (or use --transcript-file).
        query: Option<String>,
    },
    /// Run the evaluation harness over a labeled query file.
    Eval {
        /// Tab-separated labels: query_id, text, category, relevant, scores.
        labels: PathBuf,
        /// Only evaluate queries of this category.
        #[arg(long, value_name = "CATEGORY")]
        category: Option<String>,
        /// Report format (tsv only).
        #[arg(long, default_value = "tsv")]
        format: String,
        /// Write the report here instead of standard output.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Inspect a concept tree file.
    Tree {
        #[command(subcommand)]
        action: TreeAction,
    },
}

#[derive(Subcommand)]
enum TreeAction {
    /// Check the tree parses and validates; exit 0 when well-formed.
    Validate {
        /// Tree file (default: configured or bundled tree).
        path: Option<PathBuf>,
    },
    /// Print an indented rendering of the tree.
    Show {
        /// Tree file (default: configured or bundled tree).
        path: Option<PathBuf>,
    },
}

/// Failures sorted by exit code.
enum CliError {
    /// Exit 1: bad invocation, unreadable files, broken config.
    Hard(String),
    /// Exit 2: pipeline ran, produced nothing.
    Soft(String),
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        CliError::Hard(e.to_string())
    }
}

impl From<AskError> for CliError {
    fn from(e: AskError) -> Self {
        CliError::Soft(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Hard(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(CliError::Soft(message)) => {
            eprintln!("no result: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = build_config(&cli)?;
    match &cli.command {
        Command::Ask { query } => ask(&cli, config, query.as_deref()),
        Command::Eval {
            labels,
            category,
            format,
            out,
        } => eval(config, labels, category.as_deref(), format, out.as_deref()),
        Command::Tree { action } => tree(config, action),
    }
}

/// Flags override file settings, which override defaults.
fn build_config(cli: &Cli) -> Result<PipelineConfig, CliError> {
    let mut config = match &cli.config {
        Some(path) => PipelineConfig::from_file(path).map_err(|e| CliError::Hard(e.to_string()))?,
        None => PipelineConfig::default(),
    };
    if let Some(value) = &cli.backend {
        match parse_backend(value).map_err(CliError::Hard)? {
            Some(backend) => config.backend = backend,
            None => {
                return Err(CliError::Hard(
                    "the live backend is configured via the config file \
                     (search.endpoint_url and friends)"
                        .into(),
                ))
            }
        }
    }
    if let Some(k) = cli.k {
        if k == 0 {
            return Err(CliError::Hard("--k must be at least 1".into()));
        }
        config.results_per_query = k;
    }
    if let Some(policy) = &cli.policy {
        let k = match config.policy {
            gist_core::SelectionPolicy::TopK(k) => k,
            gist_core::SelectionPolicy::AboveAverage => 3,
        };
        config.policy = parse_policy(policy, k).map_err(CliError::Hard)?;
    }
    if let Some(mode) = &cli.threshold_mode {
        config.dedup.threshold_mode = parse_threshold_mode(mode).map_err(CliError::Hard)?;
    }
    if let Some(command) = &cli.speak {
        config.speech_out_command = Some(command.clone());
    }
    Ok(config)
}

fn ask(cli: &Cli, config: PipelineConfig, query_arg: Option<&str>) -> Result<(), CliError> {
    let query_text = match (&cli.transcript_file, query_arg) {
        (Some(path), _) => std::fs::read_to_string(path)
            .map_err(|e| CliError::Hard(format!("cannot read transcript {}: {e}", path.display())))?
            .trim()
            .to_string(),
        (None, Some(text)) => text.to_string(),
        (None, None) => {
            return Err(CliError::Hard(
                "ask needs a query argument or --transcript-file".into(),
            ))
        }
    };
    if query_text.trim().is_empty() {
        return Err(CliError::Hard("the query is empty".into()));
    }

    let speak = config.speech_out_command.clone();
    let pipeline = Pipeline::new(config)?;
    let report = pipeline.ask(&query_text)?;
    let outcome = report.outcome.map_err(CliError::from)?;
    let rendered = outcome.render();
    print!("{rendered}");
    if let Some(template) = speak {
        speak_out(&template, &rendered);
    }
    Ok(())
}

/// Hands the output text to the configured external speech command.
/// Speech is an adapter on top of an already-produced answer, so
/// failures warn on stderr without changing the exit code.
fn speak_out(template: &str, text: &str) {
    let mut file = match tempfile::NamedTempFile::new() {
        Ok(file) => file,
        Err(e) => {
            eprintln!("warning: speak: cannot create temp file: {e}");
            return;
        }
    };
    if let Err(e) = file.write_all(text.as_bytes()) {
        eprintln!("warning: speak: cannot write temp file: {e}");
        return;
    }
    let command = template.replace("{}", &file.path().display().to_string());
    match std::process::Command::new("sh").arg("-c").arg(&command).status() {
        Ok(status) if status.success() => {}
        Ok(status) => eprintln!("warning: speak: command exited with {status}"),
        Err(e) => eprintln!("warning: speak: cannot run {command:?}: {e}"),
    }
}

fn eval(
    config: PipelineConfig,
    labels_path: &std::path::Path,
    category: Option<&str>,
    format: &str,
    out: Option<&std::path::Path>,
) -> Result<(), CliError> {
    if format != "tsv" {
        return Err(CliError::Hard(format!("unsupported format {format:?}; only tsv")));
    }
    let text = std::fs::read_to_string(labels_path)
        .map_err(|e| CliError::Hard(format!("cannot read labels {}: {e}", labels_path.display())))?;
    let mut labels = parse_labels(&text).map_err(|e| CliError::Hard(e.to_string()))?;
    if let Some(category) = category {
        labels.retain(|l| l.category == category);
        if labels.is_empty() {
            return Err(CliError::Hard(format!("no queries in category {category:?}")));
        }
    }
    let pipeline = Pipeline::new(config)?;
    let (records, reports) = pipeline.evaluate(&labels)?;
    let rendered = format!("{}\n{}", render_report(&reports), render_records(&records));
    match out {
        Some(path) => std::fs::write(path, rendered)
            .map_err(|e| CliError::Hard(format!("cannot write report {}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(())
}

fn tree(config: PipelineConfig, action: &TreeAction) -> Result<(), CliError> {
    let load = |path: &Option<PathBuf>| -> Result<ConceptTree, CliError> {
        match path.as_ref().or(config.tree_path.as_ref()) {
            Some(path) => ConceptTree::load(path).map_err(|e| CliError::Hard(e.to_string())),
            None => Ok(ConceptTree::bundled()),
        }
    };
    match action {
        TreeAction::Validate { path } => {
            load(path)?;
            println!("tree is well-formed");
            Ok(())
        }
        TreeAction::Show { path } => {
            let tree = load(path)?;
            let mut out = String::new();
            render_node(tree.root(), 0, &mut out);
            print!("{out}");
            Ok(())
        }
    }
}

fn render_node(node: &ConceptNode, depth: usize, out: &mut String) {
    out.push_str(&"  ".repeat(depth));
    out.push_str(&node.label);
    if !node.aliases.is_empty() {
        out.push_str(&format!(" ({})", node.aliases.join(", ")));
    }
    if !node.concepts.is_empty() {
        out.push_str(&format!(": {}", node.concepts.join(", ")));
    }
    out.push('\n');
    for child in &node.children {
        render_node(child, depth + 1, out);
    }
}
