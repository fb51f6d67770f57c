//! `corpvar` command-line front end.
//!
//! Exit status: 0 on success, 1 for unreadable or malformed input (and usage
//! errors), 2 when input parses but a metric or invariant cannot be satisfied.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "corpvar", version, about = "Lexical and syntactic variation metrics for tokenized corpora")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Profile one corpus: lexical for token files, syntactic for CoNLL-U.
    Analyze(AnalyzeArgs),
    /// Draw a seeded random subset of sentences.
    Sample(SampleArgs),
    /// Tabulate several saved profiles side by side.
    Compare(CompareArgs),
    /// List target-corpus types missing from a reference corpus.
    Features(FeaturesArgs),
    /// Most frequent dependency relations with mean signed distance.
    Relations(RelationsArgs),
    /// Corpus mean dependency distance and the highest-MDD sentences.
    Mdd(MddArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// One sentence per line, tokens separated by spaces or tabs.
    Tokens,
    Conllu,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Markdown,
    Csv,
    Json,
}

impl From<ReportFormat> for corpvar::report::OutputFormat {
    fn from(f: ReportFormat) -> Self {
        match f {
            ReportFormat::Markdown => Self::Markdown,
            ReportFormat::Csv => Self::Csv,
            ReportFormat::Json => Self::Json,
        }
    }
}

/// Mutually exclusive shorthand flags for the output format.
#[derive(Debug, Args)]
#[group(multiple = false)]
struct FormatFlags {
    #[arg(long)]
    json: bool,
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    markdown: bool,
}

impl FormatFlags {
    fn pick(&self, explicit: Option<ReportFormat>, default: ReportFormat) -> ReportFormat {
        if self.json {
            ReportFormat::Json
        } else if self.csv {
            ReportFormat::Csv
        } else if self.markdown {
            ReportFormat::Markdown
        } else {
            explicit.unwrap_or(default)
        }
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    input: PathBuf,
    /// Defaults to conllu for .conllu/.conll files, tokens otherwise.
    #[arg(long)]
    format: Option<InputFormat>,
    #[command(flatten)]
    output: FormatFlags,
    /// Count only single Han characters as monosyllabic words.
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set, value_name = "BOOL")]
    han_only: bool,
    /// Drop tokens made only of punctuation before lexical counts.
    #[arg(long)]
    exclude_punct: bool,
    /// Drop WP/punct arcs from dependency statistics.
    #[arg(long)]
    exclude_punct_arcs: bool,
    /// Corpus id; defaults to the file stem.
    #[arg(long)]
    id: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[arg(long, required = true, num_args = 1..)]
    input: Vec<PathBuf>,
    #[arg(long)]
    format: Option<InputFormat>,
    /// Sentences to draw; the whole corpus is copied when it is smaller.
    #[arg(long, default_value_t = 2000)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample each input separately; `--out` is then a directory.
    #[arg(long)]
    per_file: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Profile JSON files (lexical or syntactic), one column each.
    #[arg(long, required = true, num_args = 1..)]
    profiles: Vec<PathBuf>,
    /// Add Spearman correlation of each lexical metric with corpus size.
    #[arg(long)]
    relevance: bool,
    #[arg(long)]
    format: Option<ReportFormat>,
    #[command(flatten)]
    output: FormatFlags,
    /// Relations listed per syntactic profile.
    #[arg(long, default_value_t = 5)]
    top: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    #[arg(long)]
    target: PathBuf,
    #[arg(long)]
    reference: PathBuf,
    #[arg(long)]
    format: Option<InputFormat>,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    min_freq: u64,
    /// Keyword-in-context snippets kept per candidate.
    #[arg(long, default_value_t = corpvar::features::DEFAULT_MAX_CONTEXTS)]
    contexts: usize,
    /// Tokens of context on each side.
    #[arg(long, default_value_t = corpvar::features::DEFAULT_WINDOW as u64, value_parser = clap::value_parser!(u64).range(1..))]
    window: u64,
    /// Annotation TSV to write; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RelationsArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 5)]
    top: usize,
    #[arg(long)]
    exclude_punct_arcs: bool,
    #[arg(long)]
    format: Option<ReportFormat>,
    #[command(flatten)]
    output: FormatFlags,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MddArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, default_value_t = 3)]
    top_sentences: usize,
    #[arg(long)]
    exclude_punct_arcs: bool,
    #[arg(long)]
    format: Option<ReportFormat>,
    #[command(flatten)]
    output: FormatFlags,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => commands::analyze(a),
        Command::Sample(a) => commands::sample(a),
        Command::Compare(a) => commands::compare(a),
        Command::Features(a) => commands::features(a),
        Command::Relations(a) => commands::relations(a),
        Command::Mdd(a) => commands::mdd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("corpvar: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}
