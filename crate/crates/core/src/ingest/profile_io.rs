//! JSON persistence for lexical and syntactic profiles.
//!
//! Field sets are checked exactly: a missing or unrecognized key is a
//! [`Error::Schema`]. Numbers are written in shortest round-trip form, so
//! reading a profile back yields bit-identical values.

use std::path::Path;

use serde::de::DeserializeOwned;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::lexical::LexicalProfile;
use crate::syntactic::SyntacticProfile;

#[derive(Debug, Clone, PartialEq)]
pub enum Profile {
    Lexical(LexicalProfile),
    Syntactic(SyntacticProfile),
}

impl Profile {
    pub fn id(&self) -> &str {
        match self {
            Profile::Lexical(p) => &p.id,
            Profile::Syntactic(p) => &p.id,
        }
    }
}

impl From<LexicalProfile> for Profile {
    fn from(p: LexicalProfile) -> Self {
        Profile::Lexical(p)
    }
}

impl From<SyntacticProfile> for Profile {
    fn from(p: SyntacticProfile) -> Self {
        Profile::Syntactic(p)
    }
}

pub fn profile_to_json(profile: &Profile) -> String {
    let mut s = match profile {
        Profile::Lexical(p) => serde_json::to_string_pretty(p),
        Profile::Syntactic(p) => serde_json::to_string_pretty(p),
    }
    .expect("profiles contain only serializable fields");
    s.push('\n');
    s
}

pub fn write_profile(profile: &Profile, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, profile_to_json(profile)).map_err(|e| Error::io(path, e))
}

fn check_keys(obj: &Map<String, Value>, expected: &[&str], kind: &str) -> Result<()> {
    let missing: Vec<&str> = expected.iter().copied().filter(|k| !obj.contains_key(*k)).collect();
    if !missing.is_empty() {
        return Err(Error::Schema(format!("{kind} profile missing field(s): {}", missing.join(", "))));
    }
    let unknown: Vec<&str> = obj
        .keys()
        .map(String::as_str)
        .filter(|k| !expected.contains(k))
        .collect();
    if !unknown.is_empty() {
        return Err(Error::Schema(format!("{kind} profile has unknown field(s): {}", unknown.join(", "))));
    }
    Ok(())
}

fn decode<T: DeserializeOwned>(value: Value) -> Result<T> {
    serde_json::from_value(value).map_err(|e| Error::Schema(e.to_string()))
}

/// Parses either profile kind; objects carrying `relations` or
/// `sentence_count` are read as syntactic, everything else as lexical.
pub fn profile_from_json(text: &str) -> Result<Profile> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    profile_from_value(value)
}

pub(crate) fn profile_from_value(value: Value) -> Result<Profile> {
    let Value::Object(obj) = &value else {
        return Err(Error::Schema("profile must be a JSON object".into()));
    };
    if obj.contains_key("relations") || obj.contains_key("sentence_count") {
        check_keys(obj, &SyntacticProfile::FIELDS, "syntactic")?;
        if let Some(Value::Array(rows)) = obj.get("relations") {
            for row in rows {
                match row {
                    Value::Object(r) => check_keys(r, &["label", "proportion", "mean_signed_distance"], "relation")?,
                    _ => return Err(Error::Schema("relation rows must be objects".into())),
                }
            }
        }
        Ok(Profile::Syntactic(decode(value)?))
    } else {
        check_keys(obj, &LexicalProfile::FIELDS, "lexical")?;
        Ok(Profile::Lexical(decode(value)?))
    }
}

pub fn read_profile(path: impl AsRef<Path>) -> Result<Profile> {
    let path = path.as_ref();
    let text = super::read_utf8(path)?;
    profile_from_json(&text)
}
