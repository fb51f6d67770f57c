use std::io::Write;
use std::path::Path;

use crate::corpus::{Corpus, Sentence, Token};
use crate::error::{Error, Result};

use super::{id_from_path, read_utf8};

/// Reads a one-sentence-per-line token file. Tokens are separated by runs
/// of ASCII spaces or tabs; blank lines are skipped.
pub fn parse_tokens_file(path: impl AsRef<Path>) -> Result<Corpus> {
    let path = path.as_ref();
    let text = read_utf8(path)?;
    parse_tokens_str(id_from_path(path), &text)
}

pub fn parse_tokens_str(id: impl Into<String>, text: &str) -> Result<Corpus> {
    let mut sentences = Vec::new();
    for (lineno, line) in text.split('\n').enumerate() {
        let line = line.strip_suffix('\r').unwrap_or(line);
        let tokens = line
            .split([' ', '\t'])
            .filter(|t| !t.is_empty())
            .map(|t| {
                Token::new(t).map_err(|_| Error::Parse {
                    line: lineno + 1,
                    message: format!("invalid token {t:?}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if tokens.is_empty() {
            continue;
        }
        sentences.push(Sentence::new(tokens)?);
    }
    if sentences.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(Corpus::new(id, sentences))
}

/// Writes `corpus` in the token format: single spaces, LF line endings.
pub fn write_tokens<W: Write>(corpus: &Corpus, mut out: W) -> std::io::Result<()> {
    for sentence in corpus.sentences() {
        let mut first = true;
        for token in sentence.tokens() {
            if !first {
                out.write_all(b" ")?;
            }
            out.write_all(token.as_str().as_bytes())?;
            first = false;
        }
        out.write_all(b"\n")?;
    }
    Ok(())
}
