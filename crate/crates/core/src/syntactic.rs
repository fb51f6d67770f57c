//! Dependency distance statistics.
//!
//! The signed distance of an arc is `head - dependent`, so modifiers that
//! precede their head (attributives, adverbials) come out positive and
//! dependents that follow their head (objects, trailing punctuation) come out
//! negative. Root arcs carry no distance and are left out of every statistic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ingest::{ParsedCorpus, ParsedSentence, ParsedToken};

/// Relation labels treated as punctuation arcs.
pub const PUNCT_RELATIONS: [&str; 2] = ["WP", "punct"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SyntacticOptions {
    pub include_punct_arcs: bool,
}

impl Default for SyntacticOptions {
    fn default() -> Self {
        SyntacticOptions {
            include_punct_arcs: true,
        }
    }
}

impl SyntacticOptions {
    fn keeps(&self, tok: &ParsedToken) -> bool {
        self.include_punct_arcs || !PUNCT_RELATIONS.contains(&tok.relation.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcRecord {
    /// 0-based position of the sentence within its corpus.
    pub sentence_index: usize,
    pub dependent_index: usize,
    pub head_index: usize,
    pub relation: String,
    pub distance: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelationStat {
    pub label: String,
    pub proportion: f64,
    pub mean_signed_distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SyntacticProfile {
    pub id: String,
    pub sentence_count: u64,
    /// Sentences with at least one counted arc.
    pub measured_sentence_count: u64,
    pub arc_count: u64,
    /// Mean of per-sentence MDDs.
    pub mean_mdd: f64,
    /// Mean |DD| pooled over all arcs.
    pub micro_mdd: f64,
    pub relations: Vec<RelationStat>,
}

impl SyntacticProfile {
    pub const FIELDS: [&'static str; 7] = [
        "id",
        "sentence_count",
        "measured_sentence_count",
        "arc_count",
        "mean_mdd",
        "micro_mdd",
        "relations",
    ];
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremeSentence {
    pub sentence_index: usize,
    pub mdd: f64,
    pub text: String,
}

fn records(sentence_index: usize, sentence: &ParsedSentence, opts: SyntacticOptions) -> Vec<ArcRecord> {
    sentence
        .tokens()
        .iter()
        .filter(|t| t.head != 0 && opts.keeps(t))
        .map(|t| ArcRecord {
            sentence_index,
            dependent_index: t.index,
            head_index: t.head,
            relation: t.relation.clone(),
            distance: t.head as i64 - t.index as i64,
        })
        .collect()
}

/// One record per non-root token.
pub fn signed_distances(sentence: &ParsedSentence) -> Vec<ArcRecord> {
    records(0, sentence, SyntacticOptions::default())
}

pub fn arc_records(corpus: &ParsedCorpus, opts: SyntacticOptions) -> Vec<ArcRecord> {
    corpus
        .sentences()
        .iter()
        .enumerate()
        .flat_map(|(i, s)| records(i, s, opts))
        .collect()
}

/// Mean |DD| over the sentence's arcs; `None` for a sentence with no arcs.
pub fn sentence_mdd(sentence: &ParsedSentence) -> Option<f64> {
    sentence_mdd_with(sentence, SyntacticOptions::default())
}

pub fn sentence_mdd_with(sentence: &ParsedSentence, opts: SyntacticOptions) -> Option<f64> {
    let (sum, n) = sentence
        .tokens()
        .iter()
        .filter(|t| t.head != 0 && opts.keeps(t))
        .fold((0u64, 0u64), |(s, n), t| (s + t.head.abs_diff(t.index) as u64, n + 1));
    (n > 0).then(|| sum as f64 / n as f64)
}

/// Macro-average of sentence MDDs over sentences where MDD is defined.
pub fn corpus_mdd(corpus: &ParsedCorpus) -> Result<f64> {
    corpus_mdd_with(corpus, SyntacticOptions::default())
}

pub fn corpus_mdd_with(corpus: &ParsedCorpus, opts: SyntacticOptions) -> Result<f64> {
    let mdds: Vec<f64> = corpus
        .sentences()
        .iter()
        .filter_map(|s| sentence_mdd_with(s, opts))
        .collect();
    if mdds.is_empty() {
        return Err(Error::UndefinedMetric("no sentence has a dependency arc".into()));
    }
    Ok(mdds.iter().sum::<f64>() / mdds.len() as f64)
}

/// Per-label share of arcs and mean signed distance, most frequent first.
pub fn relation_stats(corpus: &ParsedCorpus) -> Result<Vec<RelationStat>> {
    relation_stats_with(corpus, SyntacticOptions::default())
}

pub fn relation_stats_with(corpus: &ParsedCorpus, opts: SyntacticOptions) -> Result<Vec<RelationStat>> {
    relation_stats_from_records(&arc_records(corpus, opts))
}

fn relation_stats_from_records(arcs: &[ArcRecord]) -> Result<Vec<RelationStat>> {
    if arcs.is_empty() {
        return Err(Error::UndefinedMetric("corpus has no dependency arcs".into()));
    }
    let mut buckets: BTreeMap<&str, (u64, i64)> = BTreeMap::new();
    for arc in arcs {
        let b = buckets.entry(arc.relation.as_str()).or_default();
        b.0 += 1;
        b.1 += arc.distance;
    }
    let mut rows: Vec<(&str, u64, i64)> = buckets.into_iter().map(|(l, (c, s))| (l, c, s)).collect();
    // BTreeMap order already sorts labels; a stable sort keeps that for ties.
    rows.sort_by_key(|r| std::cmp::Reverse(r.1));
    let total = arcs.len() as f64;
    Ok(rows
        .into_iter()
        .map(|(label, count, sum)| RelationStat {
            label: label.to_string(),
            proportion: count as f64 / total,
            mean_signed_distance: sum as f64 / count as f64,
        })
        .collect())
}

/// The `k` sentences with the highest MDD, ties by earlier position.
pub fn extreme_sentences(corpus: &ParsedCorpus, k: usize) -> Vec<ExtremeSentence> {
    extreme_sentences_with(corpus, k, SyntacticOptions::default())
}

pub fn extreme_sentences_with(corpus: &ParsedCorpus, k: usize, opts: SyntacticOptions) -> Vec<ExtremeSentence> {
    let mut scored: Vec<(usize, f64)> = corpus
        .sentences()
        .iter()
        .enumerate()
        .filter_map(|(i, s)| sentence_mdd_with(s, opts).map(|m| (i, m)))
        .collect();
    scored.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    scored
        .into_iter()
        .take(k)
        .map(|(i, mdd)| ExtremeSentence {
            sentence_index: i,
            mdd,
            text: corpus.sentences()[i].text(),
        })
        .collect()
}

pub fn syntactic_profile(corpus: &ParsedCorpus, opts: SyntacticOptions) -> Result<SyntacticProfile> {
    let arcs = arc_records(corpus, opts);
    let relations = relation_stats_from_records(&arcs)?;
    let mean_mdd = corpus_mdd_with(corpus, opts)?;
    let measured = corpus
        .sentences()
        .iter()
        .filter(|s| sentence_mdd_with(s, opts).is_some())
        .count();
    let abs_sum: u64 = arcs.iter().map(|a| a.distance.unsigned_abs()).sum();
    Ok(SyntacticProfile {
        id: corpus.id.clone(),
        sentence_count: corpus.sentences().len() as u64,
        measured_sentence_count: measured as u64,
        arc_count: arcs.len() as u64,
        mean_mdd,
        micro_mdd: abs_sum as f64 / arcs.len() as f64,
        relations,
    })
}
