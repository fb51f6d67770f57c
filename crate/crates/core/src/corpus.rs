//! Tokenized corpora and rank-ordered frequency lists.
//!
//! Type identity is exact string equality after NFC normalization. No case
//! or width folding is applied, so variant spellings such as 菲律滨 and 菲律宾
//! stay distinct types.

use std::collections::HashMap;
use std::fmt;

use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

/// One segmenter output unit, stored NFC-normalized.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token(String);

impl Token {
    pub fn new(text: &str) -> Result<Self> {
        let normalized: String = text.nfc().collect();
        if normalized.is_empty() || normalized.chars().any(char::is_whitespace) {
            return Err(Error::InvalidToken(text.to_string()));
        }
        Ok(Token(normalized))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Number of Unicode scalar values.
    pub fn char_count(&self) -> usize {
        char_count(&self.0)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Scalar-value count of an already normalized string.
pub fn char_count(text: &str) -> usize {
    text.chars().count()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    tokens: Vec<Token>,
}

impl Sentence {
    pub fn new(tokens: Vec<Token>) -> Result<Self> {
        if tokens.is_empty() {
            return Err(Error::EmptySentence);
        }
        Ok(Sentence { tokens })
    }

    /// Builds a sentence from raw strings, normalizing each one.
    pub fn from_strs<S: AsRef<str>>(tokens: &[S]) -> Result<Self> {
        let tokens = tokens
            .iter()
            .map(|t| Token::new(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Sentence::new(tokens)
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub id: String,
    sentences: Vec<Sentence>,
}

impl Corpus {
    pub fn new(id: impl Into<String>, sentences: Vec<Sentence>) -> Self {
        Corpus {
            id: id.into(),
            sentences,
        }
    }

    /// Convenience constructor for tests and fixtures.
    pub fn from_token_lists<S: AsRef<str>>(id: impl Into<String>, lists: &[Vec<S>]) -> Result<Self> {
        let sentences = lists
            .iter()
            .map(|s| Sentence::from_strs(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Corpus::new(id, sentences))
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    pub fn into_sentences(self) -> Vec<Sentence> {
        self.sentences
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Sentence::len).sum()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flat_map(|s| s.tokens.iter())
    }

    /// Copy of this corpus keeping only the tokens accepted by `keep`.
    /// Sentences left empty are dropped.
    pub fn filter_tokens(&self, mut keep: impl FnMut(&Token) -> bool) -> Corpus {
        let sentences = self
            .sentences
            .iter()
            .filter_map(|s| {
                let tokens: Vec<Token> = s.tokens.iter().filter(|t| keep(t)).cloned().collect();
                Sentence::new(tokens).ok()
            })
            .collect();
        Corpus::new(self.id.clone(), sentences)
    }
}

/// A single row of a [`FrequencyList`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyEntry {
    pub word: String,
    pub frequency: u64,
}

/// Word types ordered by descending frequency, ties by ascending code point.
///
/// Rank `r` is the 1-based position in [`FrequencyList::entries`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyList {
    entries: Vec<FrequencyEntry>,
}

impl FrequencyList {
    pub fn from_corpus(corpus: &Corpus) -> Result<Self> {
        let mut counts: HashMap<&str, u64> = HashMap::new();
        for token in corpus.tokens() {
            *counts.entry(token.as_str()).or_insert(0) += 1;
        }
        if counts.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let entries = counts
            .into_iter()
            .map(|(w, f)| FrequencyEntry {
                word: w.to_string(),
                frequency: f,
            })
            .collect();
        Ok(Self::from_unsorted(entries))
    }

    /// Builds a list from `(word, count)` pairs, merging duplicates and
    /// applying the canonical rank order.
    pub fn from_counts<S: AsRef<str>>(counts: impl IntoIterator<Item = (S, u64)>) -> Result<Self> {
        let mut merged: HashMap<String, u64> = HashMap::new();
        for (w, f) in counts {
            if f == 0 {
                continue;
            }
            *merged.entry(w.as_ref().to_string()).or_insert(0) += f;
        }
        if merged.is_empty() {
            return Err(Error::EmptyCorpus);
        }
        let entries = merged
            .into_iter()
            .map(|(word, frequency)| FrequencyEntry { word, frequency })
            .collect();
        Ok(Self::from_unsorted(entries))
    }

    /// Anonymous list from bare frequencies; types are named by their input
    /// position so the given order survives tie-breaking as long as the
    /// input is already non-increasing.
    pub fn from_frequencies(freqs: &[u64]) -> Result<Self> {
        let width = freqs.len().to_string().len();
        Self::from_counts(
            freqs
                .iter()
                .enumerate()
                .map(|(i, &f)| (format!("t{:0width$}", i, width = width), f)),
        )
    }

    fn from_unsorted(mut entries: Vec<FrequencyEntry>) -> Self {
        // String's Ord is byte order, which for UTF-8 is code-point order.
        entries.sort_unstable_by(|a, b| b.frequency.cmp(&a.frequency).then_with(|| a.word.cmp(&b.word)));
        FrequencyList { entries }
    }

    pub fn entries(&self) -> &[FrequencyEntry] {
        &self.entries
    }

    /// Number of types, V.
    pub fn type_count(&self) -> usize {
        self.entries.len()
    }

    /// Sum of all frequencies, N.
    pub fn token_count(&self) -> u64 {
        self.entries.iter().map(|e| e.frequency).sum()
    }

    /// f(r) for 1-based rank `r`.
    pub fn frequency_at(&self, rank: usize) -> Option<u64> {
        rank.checked_sub(1)
            .and_then(|i| self.entries.get(i))
            .map(|e| e.frequency)
    }

    pub fn frequencies(&self) -> Vec<u64> {
        self.entries.iter().map(|e| e.frequency).collect()
    }
}

pub fn build_frequency_list(corpus: &Corpus) -> Result<FrequencyList> {
    FrequencyList::from_corpus(corpus)
}
