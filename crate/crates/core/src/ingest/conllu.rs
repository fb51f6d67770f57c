//! The CoNLL-U subset consumed here: ID, FORM, HEAD and DEPREL.
//!
//! Multiword ranges (`3-4`) and empty nodes (`3.1`) are skipped. Head cycles
//! are not rejected; distances are computed on whatever arcs are given.

use std::io::Write;
use std::path::Path;

use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

use super::{id_from_path, read_utf8};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedToken {
    /// 1-based position in the sentence.
    pub index: usize,
    pub form: String,
    /// 0 is the virtual root, otherwise a 1-based token index.
    pub head: usize,
    pub relation: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedSentence {
    tokens: Vec<ParsedToken>,
}

impl ParsedSentence {
    /// Validates index contiguity, head range, and the single-root rule.
    pub fn new(tokens: Vec<ParsedToken>) -> Result<Self> {
        Self::validate(&tokens, 0)?;
        Ok(ParsedSentence { tokens })
    }

    /// Builds a sentence from `(form, head, relation)` triples in order.
    pub fn from_arcs(arcs: &[(&str, usize, &str)]) -> Result<Self> {
        let tokens = arcs
            .iter()
            .enumerate()
            .map(|(i, &(form, head, rel))| ParsedToken {
                index: i + 1,
                form: form.nfc().collect(),
                head,
                relation: rel.to_string(),
            })
            .collect();
        Self::new(tokens)
    }

    fn validate(tokens: &[ParsedToken], first_line: usize) -> Result<()> {
        let n = tokens.len();
        let arc_err = |message: String| Error::InvalidArc {
            line: first_line,
            message,
        };
        if n == 0 {
            return Err(Error::EmptySentence);
        }
        let mut roots = 0;
        for (pos, tok) in tokens.iter().enumerate() {
            let line = if first_line == 0 { 0 } else { first_line + pos };
            if tok.index != pos + 1 {
                return Err(Error::Parse {
                    line,
                    message: format!("expected token id {}, found {}", pos + 1, tok.index),
                });
            }
            if tok.head > n {
                return Err(Error::InvalidArc {
                    line,
                    message: format!("head {} out of range for {n}-token sentence", tok.head),
                });
            }
            if tok.head == tok.index {
                return Err(Error::InvalidArc {
                    line,
                    message: format!("token {} is its own head", tok.index),
                });
            }
            if tok.head == 0 {
                roots += 1;
            }
        }
        if roots != 1 {
            return Err(arc_err(format!("sentence has {roots} root tokens, expected exactly 1")));
        }
        Ok(())
    }

    pub fn tokens(&self) -> &[ParsedToken] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    /// Forms joined by single spaces.
    pub fn text(&self) -> String {
        self.tokens.iter().map(|t| t.form.as_str()).collect::<Vec<_>>().join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedCorpus {
    pub id: String,
    sentences: Vec<ParsedSentence>,
}

impl ParsedCorpus {
    pub fn new(id: impl Into<String>, sentences: Vec<ParsedSentence>) -> Self {
        ParsedCorpus {
            id: id.into(),
            sentences,
        }
    }

    pub fn sentences(&self) -> &[ParsedSentence] {
        &self.sentences
    }

    pub fn into_sentences(self) -> Vec<ParsedSentence> {
        self.sentences
    }
}

pub fn parse_conllu(path: impl AsRef<Path>) -> Result<ParsedCorpus> {
    let path = path.as_ref();
    let text = read_utf8(path)?;
    parse_conllu_str(id_from_path(path), &text)
}

pub fn parse_conllu_str(id: impl Into<String>, text: &str) -> Result<ParsedCorpus> {
    let mut sentences = Vec::new();
    let mut current: Vec<ParsedToken> = Vec::new();
    let mut start_line = 0;

    let mut flush = |current: &mut Vec<ParsedToken>, start_line: usize| -> Result<()> {
        if current.is_empty() {
            return Ok(());
        }
        let tokens = std::mem::take(current);
        ParsedSentence::validate(&tokens, start_line)?;
        sentences.push(ParsedSentence { tokens });
        Ok(())
    };

    for (i, raw) in text.split('\n').enumerate() {
        let lineno = i + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            flush(&mut current, start_line)?;
            continue;
        }
        if line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 10 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected 10 tab-separated columns, found {}", cols.len()),
            });
        }
        let id = cols[0];
        if id.contains('-') || id.contains('.') {
            continue;
        }
        let index: usize = id.parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("invalid token id {id:?}"),
        })?;
        let head: usize = cols[6].parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("invalid head {:?}", cols[6]),
        })?;
        if current.is_empty() {
            start_line = lineno;
        }
        current.push(ParsedToken {
            index,
            form: cols[1].nfc().collect(),
            head,
            relation: cols[7].to_string(),
        });
    }
    flush(&mut current, start_line)?;

    if sentences.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(ParsedCorpus::new(id, sentences))
}

/// Writes the four consumed columns; the rest are emitted as `_`.
pub fn write_conllu<W: Write>(corpus: &ParsedCorpus, mut out: W) -> std::io::Result<()> {
    for sentence in corpus.sentences() {
        for t in sentence.tokens() {
            writeln!(
                out,
                "{}\t{}\t_\t_\t_\t_\t{}\t{}\t_\t_",
                t.index, t.form, t.head, t.relation
            )?;
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}
