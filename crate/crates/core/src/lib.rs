//! Corpus variation metrics.
//!
//! Measures lexical richness (type/token ratio, hapax legomena, monosyllabic
//! words, h-point, arc-length richness `R`, the `a` indicator) and syntactic
//! complexity (mean dependency distance, relation profiles) of tokenized and
//! dependency-parsed corpora, correlates the measures with corpus size, and
//! extracts candidate region-specific words against a reference corpus.

pub mod corpus;
pub mod error;
pub mod features;
pub mod ingest;
pub mod lexical;
pub mod rank_stats;
pub mod report;
pub mod syntactic;

pub use corpus::{build_frequency_list, char_count, Corpus, FrequencyEntry, FrequencyList, Sentence, Token};
pub use error::{Error, Result};
pub use ingest::{ParsedCorpus, ParsedSentence, ParsedToken, Profile};
pub use lexical::{lexical_profile, LexicalMetric, LexicalOptions, LexicalProfile};
pub use syntactic::{syntactic_profile, SyntacticOptions, SyntacticProfile};
