//! Reading corpora from disk, seeded sentence sampling, and profile I/O.

mod conllu;
mod profile_io;
mod sample;
mod tokens;

use std::path::Path;

pub use conllu::{parse_conllu, parse_conllu_str, write_conllu, ParsedCorpus, ParsedSentence, ParsedToken};
pub(crate) use profile_io::profile_from_value;
pub use profile_io::{profile_from_json, profile_to_json, read_profile, write_profile, Profile};
pub use sample::{sample_indices, sample_sentences, Sampleable};
pub use tokens::{parse_tokens_file, parse_tokens_str, write_tokens};

use crate::error::{Error, Result};

fn read_utf8(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    String::from_utf8(bytes).map_err(|e| Error::Encoding {
        path: path.to_path_buf(),
        offset: e.utf8_error().valid_up_to(),
    })
}

/// File stem used as the default corpus id.
pub(crate) fn id_from_path(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "corpus".to_string())
}
