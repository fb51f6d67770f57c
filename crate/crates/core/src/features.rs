//! Candidate feature words: target-corpus types missing from a reference
//! corpus, with keyword-in-context snippets for manual review, plus the
//! annotation TSV that records the reviewer's decisions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use crate::corpus::{Corpus, FrequencyList};
use crate::error::{Error, Result};

pub const ANNOTATION_HEADER: &str = "word\tcategory\tmainland_equivalent\tnote";

pub const DEFAULT_MAX_CONTEXTS: usize = 5;
pub const DEFAULT_WINDOW: usize = 5;

/// Exact set of distinct token strings in the reference corpus.
pub fn reference_type_set(reference: &Corpus) -> Result<BTreeSet<String>> {
    let set: BTreeSet<String> = reference.tokens().map(|t| t.as_str().to_string()).collect();
    if set.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(set)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kwic {
    pub left: Vec<String>,
    pub keyword: String,
    pub right: Vec<String>,
}

impl fmt::Display for Kwic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let left = self.left.join(" ");
        let right = self.right.join(" ");
        let sep_l = if left.is_empty() { "" } else { " " };
        let sep_r = if right.is_empty() { "" } else { " " };
        write!(f, "{left}{sep_l}[{}]{sep_r}{right}", self.keyword)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeatureCandidate {
    pub word: String,
    pub frequency: u64,
    pub contexts: Vec<Kwic>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtractOptions {
    pub min_freq: u64,
    pub max_contexts: usize,
    /// Tokens of context on each side, bounded by the sentence.
    pub window: usize,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            min_freq: 1,
            max_contexts: DEFAULT_MAX_CONTEXTS,
            window: DEFAULT_WINDOW,
        }
    }
}

/// Target types absent from `reference` with frequency `>= min_freq`,
/// ordered by frequency then code point. Contexts come from the first
/// occurrences in corpus order.
pub fn extract_candidates(
    target: &Corpus,
    reference: &BTreeSet<String>,
    opts: ExtractOptions,
) -> Vec<FeatureCandidate> {
    let Ok(list) = FrequencyList::from_corpus(target) else {
        return Vec::new();
    };
    let mut candidates: Vec<FeatureCandidate> = list
        .entries()
        .iter()
        .filter(|e| e.frequency >= opts.min_freq && !reference.contains(&e.word))
        .map(|e| FeatureCandidate {
            word: e.word.clone(),
            frequency: e.frequency,
            contexts: Vec::new(),
        })
        .collect();
    if opts.max_contexts == 0 || candidates.is_empty() {
        return candidates;
    }

    let slot: HashMap<String, usize> = candidates
        .iter()
        .enumerate()
        .map(|(i, c)| (c.word.clone(), i))
        .collect();
    for sentence in target.sentences() {
        let toks = sentence.tokens();
        for (pos, tok) in toks.iter().enumerate() {
            let Some(&i) = slot.get(tok.as_str()) else { continue };
            let cand = &mut candidates[i];
            if cand.contexts.len() >= opts.max_contexts {
                continue;
            }
            let lo = pos.saturating_sub(opts.window);
            let hi = (pos + 1 + opts.window).min(toks.len());
            cand.contexts.push(Kwic {
                left: toks[lo..pos].iter().map(|t| t.as_str().to_string()).collect(),
                keyword: tok.as_str().to_string(),
                right: toks[pos + 1..hi].iter().map(|t| t.as_str().to_string()).collect(),
            });
        }
    }
    candidates
}

/// Reviewer verdict for a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Category {
    /// Same term as the mainland, individual characters written differently.
    A,
    /// Different, but the meaning is still easy to see.
    B,
    /// Hard to understand from the written form alone.
    C,
    /// Rejected.
    X,
}

impl Category {
    pub fn as_str(self) -> &'static str {
        match self {
            Category::A => "a",
            Category::B => "b",
            Category::C => "c",
            Category::X => "x",
        }
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "a" => Ok(Category::A),
            "b" => Ok(Category::B),
            "c" => Ok(Category::C),
            "x" => Ok(Category::X),
            other => Err(format!("unknown category {other:?}, expected one of a, b, c, x")),
        }
    }
}

/// One line of the annotation TSV. `category` is `None` until reviewed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotationRecord {
    pub word: String,
    pub category: Option<Category>,
    pub mainland_equivalent: String,
    pub note: String,
}

impl AnnotationRecord {
    /// Unreviewed record whose note carries the frequency and contexts.
    pub fn from_candidate(c: &FeatureCandidate) -> Self {
        let mut note = format!("freq={}", c.frequency);
        for ctx in &c.contexts {
            note.push_str(" | ");
            note.push_str(&ctx.to_string());
        }
        AnnotationRecord {
            word: c.word.clone(),
            category: None,
            mainland_equivalent: String::new(),
            note,
        }
    }

    /// Accepted as a feature word: reviewed and not rejected.
    pub fn is_feature_word(&self) -> bool {
        matches!(self.category, Some(Category::A | Category::B | Category::C))
    }
}

fn check_field(name: &str, value: &str, record: usize) -> Result<()> {
    if value.contains(['\t', '\n', '\r']) {
        return Err(Error::Schema(format!(
            "record {record}: field {name} contains a tab or line break"
        )));
    }
    Ok(())
}

pub fn write_annotations_to<W: Write>(records: &[AnnotationRecord], mut out: W) -> Result<()> {
    let io = |e| Error::io("<annotations>", e);
    writeln!(out, "{ANNOTATION_HEADER}").map_err(io)?;
    for (i, r) in records.iter().enumerate() {
        check_field("word", &r.word, i + 1)?;
        if r.word.is_empty() {
            return Err(Error::Schema(format!("record {}: empty word", i + 1)));
        }
        check_field("mainland_equivalent", &r.mainland_equivalent, i + 1)?;
        check_field("note", &r.note, i + 1)?;
        writeln!(
            out,
            "{}\t{}\t{}\t{}",
            r.word,
            r.category.map_or("", Category::as_str),
            r.mainland_equivalent,
            r.note
        )
        .map_err(io)?;
    }
    Ok(())
}

pub fn write_annotations(records: &[AnnotationRecord], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut buf = Vec::new();
    write_annotations_to(records, &mut buf)?;
    std::fs::write(path, buf).map_err(|e| Error::io(path, e))
}

pub fn write_candidates(candidates: &[FeatureCandidate], path: impl AsRef<Path>) -> Result<()> {
    let records: Vec<AnnotationRecord> = candidates.iter().map(AnnotationRecord::from_candidate).collect();
    write_annotations(&records, path)
}

pub fn parse_annotations(text: &str) -> Result<Vec<AnnotationRecord>> {
    let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l.strip_suffix('\r').unwrap_or(l)));
    match lines.next() {
        Some((_, h)) if h == ANNOTATION_HEADER => {}
        Some((_, h)) => {
            return Err(Error::Schema(format!(
                "line 1: expected header {ANNOTATION_HEADER:?}, found {h:?}"
            )))
        }
        None => unreachable!("split yields at least one item"),
    }
    let mut records = Vec::new();
    for (lineno, line) in lines {
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 4 {
            return Err(Error::Schema(format!(
                "line {lineno}: expected 4 tab-separated fields, found {}",
                cols.len()
            )));
        }
        if cols[0].is_empty() {
            return Err(Error::Schema(format!("line {lineno}: empty word")));
        }
        let category = match cols[1] {
            "" => None,
            c => Some(c.parse::<Category>().map_err(|m| Error::Schema(format!("line {lineno}: {m}")))?),
        };
        records.push(AnnotationRecord {
            word: cols[0].to_string(),
            category,
            mainland_equivalent: cols[2].to_string(),
            note: cols[3].to_string(),
        });
    }
    Ok(records)
}

pub fn read_annotations(path: impl AsRef<Path>) -> Result<Vec<AnnotationRecord>> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let text = String::from_utf8(bytes).map_err(|e| Error::Encoding {
        path: path.to_path_buf(),
        offset: e.utf8_error().valid_up_to(),
    })?;
    parse_annotations(&text)
}
