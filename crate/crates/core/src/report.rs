//! Cross-corpus comparison tables and their Markdown, CSV and JSON renderings.
//!
//! Markdown and CSV print reals with 3 decimals and proportions as
//! percentages with 2 decimals; absent cells are `—` in Markdown and empty in
//! CSV. JSON keeps full precision and embeds the source profiles verbatim.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::ingest::Profile;
use crate::lexical::{LexicalMetric, LexicalProfile};
use crate::rank_stats::{correlate_with_size, CorrelationResult};
use crate::syntactic::{ExtremeSentence, RelationStat, SyntacticProfile};

pub const ABSENT_MARK: &str = "—";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Markdown,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "markdown" | "md" => Ok(OutputFormat::Markdown),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellKind {
    Count,
    Real,
    Percent,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub key: String,
    pub label: String,
    pub kind: CellKind,
    /// One cell per corpus id, in column order.
    pub values: Vec<Option<f64>>,
    /// Correlation with corpus size; only lexical rows carry one.
    pub relevance: Option<CorrelationResult>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompareOptions {
    pub with_relevance: bool,
    /// Relations listed per corpus.
    pub top_k: usize,
}

impl Default for CompareOptions {
    fn default() -> Self {
        CompareOptions {
            with_relevance: false,
            top_k: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonReport {
    pub corpus_ids: Vec<String>,
    pub lexical_profiles: Vec<LexicalProfile>,
    pub syntactic_profiles: Vec<SyntacticProfile>,
    /// Whether the rows carry a relevance column.
    pub relevance_column: bool,
    pub lexical_rows: Vec<ReportRow>,
    pub syntactic_rows: Vec<ReportRow>,
    pub warnings: Vec<String>,
}

impl ComparisonReport {
    pub fn rows(&self) -> impl Iterator<Item = &ReportRow> {
        self.lexical_rows.iter().chain(&self.syntactic_rows)
    }
}

/// Assembles the comparison. Columns follow lexical profile order, then any
/// corpus that only has a syntactic profile.
pub fn build_comparison(
    lexical: &[LexicalProfile],
    syntactic: &[SyntacticProfile],
    opts: CompareOptions,
) -> Result<ComparisonReport> {
    if lexical.is_empty() && syntactic.is_empty() {
        return Err(Error::TooFewObservations { needed: 1, got: 0 });
    }
    let mut warnings = Vec::new();

    let mut corpus_ids: Vec<String> = lexical.iter().map(|p| p.id.clone()).collect();
    let mut lex_cols: Vec<Option<&LexicalProfile>> = lexical.iter().map(Some).collect();
    let mut syn_cols: Vec<Option<&SyntacticProfile>> = vec![None; corpus_ids.len()];
    for sp in syntactic {
        match (0..corpus_ids.len()).find(|&i| corpus_ids[i] == sp.id && syn_cols[i].is_none()) {
            Some(i) => syn_cols[i] = Some(sp),
            None => {
                corpus_ids.push(sp.id.clone());
                lex_cols.push(None);
                syn_cols.push(Some(sp));
            }
        }
    }

    let relevance = if opts.with_relevance {
        match correlate_with_size(lexical) {
            Ok(table) => {
                for row in &table {
                    if let Err(e) = &row.result {
                        warnings.push(format!("relevance for {}: {e}", row.metric.key()));
                    }
                }
                Some(table)
            }
            Err(e) => {
                warnings.push(format!("relevance column omitted: {e}"));
                None
            }
        }
    } else {
        None
    };

    let lexical_rows = if lexical.is_empty() {
        Vec::new()
    } else {
        LexicalMetric::ALL
            .iter()
            .map(|&m| ReportRow {
                key: m.key().to_string(),
                label: m.label().to_string(),
                kind: if m.is_count() {
                    CellKind::Count
                } else if m.is_proportion() {
                    CellKind::Percent
                } else {
                    CellKind::Real
                },
                values: lex_cols.iter().map(|p| p.and_then(|p| m.value(p))).collect(),
                relevance: relevance
                    .as_ref()
                    .and_then(|t| t.iter().find(|r| r.metric == m))
                    .and_then(|r| r.result.as_ref().ok().copied()),
            })
            .collect()
    };

    let mut syntactic_rows = Vec::new();
    if !syntactic.is_empty() {
        syntactic_rows.push(ReportRow {
            key: "mean_mdd".into(),
            label: "Average dependency distance".into(),
            kind: CellKind::Real,
            values: syn_cols.iter().map(|p| p.map(|p| p.mean_mdd)).collect(),
            relevance: None,
        });
        let mut labels: Vec<&str> = Vec::new();
        let mut seen = HashSet::new();
        for sp in syntactic {
            for r in sp.relations.iter().take(opts.top_k) {
                if seen.insert(r.label.as_str()) {
                    labels.push(&r.label);
                }
            }
        }
        let lookup = |p: Option<&SyntacticProfile>, label: &str| -> Option<RelationStat> {
            p.and_then(|p| p.relations.iter().find(|r| r.label == label).cloned())
        };
        for label in labels {
            syntactic_rows.push(ReportRow {
                key: format!("relation.{label}.mean_signed_distance"),
                label: format!("{label} distance"),
                kind: CellKind::Real,
                values: syn_cols.iter().map(|p| lookup(*p, label).map(|r| r.mean_signed_distance)).collect(),
                relevance: None,
            });
            syntactic_rows.push(ReportRow {
                key: format!("relation.{label}.proportion"),
                label: format!("{label} proportion"),
                kind: CellKind::Real,
                values: syn_cols.iter().map(|p| lookup(*p, label).map(|r| r.proportion)).collect(),
                relevance: None,
            });
        }
    }

    Ok(ComparisonReport {
        corpus_ids,
        lexical_profiles: lexical.to_vec(),
        syntactic_profiles: syntactic.to_vec(),
        relevance_column: relevance.is_some(),
        lexical_rows,
        syntactic_rows,
        warnings,
    })
}

pub fn format_cell(kind: CellKind, value: f64) -> String {
    match kind {
        CellKind::Count => format!("{value:.0}"),
        CellKind::Real => format!("{value:.3}"),
        CellKind::Percent => format!("{:.2}%", value * 100.0),
    }
}

/// Inverse of [`format_cell`] at display precision.
pub fn parse_cell(cell: &str) -> Option<f64> {
    match cell.strip_suffix('%') {
        Some(pct) => pct.parse::<f64>().ok().map(|v| v / 100.0),
        None => cell.parse().ok(),
    }
}

fn format_relevance(r: &CorrelationResult) -> String {
    format!("{:.3} ({:.3})", r.rho, r.p_value)
}

fn escape_md(s: &str) -> String {
    s.replace('|', "\\|")
}

pub fn render(report: &ComparisonReport, format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Markdown => render_markdown(report).into_bytes(),
        OutputFormat::Csv => render_csv(report),
        OutputFormat::Json => render_json(report).into_bytes(),
    }
}

fn render_markdown(report: &ComparisonReport) -> String {
    let mut out = String::new();
    let mut header = vec!["Metric".to_string()];
    header.extend(report.corpus_ids.iter().map(|s| escape_md(s)));
    if report.relevance_column {
        header.push("Relevance".into());
    }
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for row in report.rows() {
        let mut cells = vec![escape_md(&row.label)];
        cells.extend(
            row.values
                .iter()
                .map(|v| v.map_or_else(|| ABSENT_MARK.to_string(), |v| format_cell(row.kind, v))),
        );
        if report.relevance_column {
            cells.push(row.relevance.as_ref().map_or_else(|| ABSENT_MARK.to_string(), format_relevance));
        }
        let _ = writeln!(out, "| {} |", cells.join(" | "));
    }
    out
}

fn render_csv(report: &ComparisonReport) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["metric".to_string()];
    header.extend(report.corpus_ids.iter().cloned());
    if report.relevance_column {
        header.push("relevance_rho".into());
        header.push("relevance_p".into());
    }
    w.write_record(&header).expect("in-memory write");
    for row in report.rows() {
        let mut cells = vec![row.key.clone()];
        cells.extend(row.values.iter().map(|v| v.map(|v| format_cell(row.kind, v)).unwrap_or_default()));
        if report.relevance_column {
            match &row.relevance {
                Some(r) => {
                    cells.push(format!("{:.3}", r.rho));
                    cells.push(format!("{:.3}", r.p_value));
                }
                None => cells.extend([String::new(), String::new()]),
            }
        }
        w.write_record(&cells).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

fn render_json(report: &ComparisonReport) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report is serializable");
    s.push('\n');
    s
}

/// Recovers the profiles embedded in a JSON report, validating each one
/// exactly as a standalone profile file would be.
pub fn profiles_from_report_json(text: &str) -> Result<(Vec<LexicalProfile>, Vec<SyntacticProfile>)> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    let take = |key: &str| -> Result<Vec<Value>> {
        match value.get(key) {
            Some(Value::Array(a)) => Ok(a.clone()),
            _ => Err(Error::Schema(format!("report is missing array {key:?}"))),
        }
    };
    let mut lexical = Vec::new();
    for v in take("lexical_profiles")? {
        match crate::ingest::profile_from_value(v)? {
            Profile::Lexical(p) => lexical.push(p),
            Profile::Syntactic(_) => return Err(Error::Schema("syntactic profile in lexical_profiles".into())),
        }
    }
    let mut syntactic = Vec::new();
    for v in take("syntactic_profiles")? {
        match crate::ingest::profile_from_value(v)? {
            Profile::Syntactic(p) => syntactic.push(p),
            Profile::Lexical(_) => return Err(Error::Schema("lexical profile in syntactic_profiles".into())),
        }
    }
    Ok((lexical, syntactic))
}

/// Top-`k` relation table for a single corpus.
pub fn render_relations(id: &str, relations: &[RelationStat], top: usize, format: OutputFormat) -> Vec<u8> {
    let rows = &relations[..top.min(relations.len())];
    match format {
        OutputFormat::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "| Relation ({}) | Distance | Proportion |", escape_md(id));
            let _ = writeln!(out, "|---|---|---|");
            for r in rows {
                let _ = writeln!(
                    out,
                    "| {} | {:.3} | {:.3} |",
                    escape_md(&r.label),
                    r.mean_signed_distance,
                    r.proportion
                );
            }
            out.into_bytes()
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["label", "mean_signed_distance", "proportion"]).expect("in-memory write");
            for r in rows {
                w.write_record([
                    r.label.clone(),
                    format!("{:.3}", r.mean_signed_distance),
                    format!("{:.3}", r.proportion),
                ])
                .expect("in-memory write");
            }
            w.into_inner().expect("in-memory flush")
        }
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&serde_json::json!({ "id": id, "relations": rows }))
                .expect("serializable");
            s.push('\n');
            s.into_bytes()
        }
    }
}

/// Corpus MDD followed by the highest-MDD sentences.
pub fn render_extremes(id: &str, corpus_mdd: f64, sentences: &[ExtremeSentence], format: OutputFormat) -> Vec<u8> {
    match format {
        OutputFormat::Markdown => {
            let mut out = String::new();
            let _ = writeln!(out, "Average dependency distance ({}): {corpus_mdd:.3}", escape_md(id));
            let _ = writeln!(out);
            let _ = writeln!(out, "| Sentence | MDD | Text |");
            let _ = writeln!(out, "|---|---|---|");
            for s in sentences {
                let _ = writeln!(out, "| {} | {:.3} | {} |", s.sentence_index + 1, s.mdd, escape_md(&s.text));
            }
            out.into_bytes()
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["sentence", "mdd", "text"]).expect("in-memory write");
            for s in sentences {
                w.write_record([(s.sentence_index + 1).to_string(), format!("{:.3}", s.mdd), s.text.clone()])
                    .expect("in-memory write");
            }
            w.into_inner().expect("in-memory flush")
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = sentences
                .iter()
                .map(|s| serde_json::json!({ "sentence": s.sentence_index + 1, "mdd": s.mdd, "text": s.text }))
                .collect();
            let mut s = serde_json::to_string_pretty(&serde_json::json!({
                "id": id,
                "mean_mdd": corpus_mdd,
                "sentences": rows,
            }))
            .expect("serializable");
            s.push('\n');
            s.into_bytes()
        }
    }
}
