//! Language profiles: the keyword sets and delimiters the lexer needs.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("failed to read profile {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("failed to parse profile {path}: {source}")]
    Parse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("invalid profile `{name}`: {reason}")]
    Invalid { name: String, reason: String },
    #[error("unknown language profile `{0}`")]
    Unknown(String),
}

/// Keyword set and delimiters for one source language.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LanguageProfile {
    pub name: String,
    pub keywords: BTreeSet<String>,
    pub line_comment: String,
    pub block_comment_open: String,
    pub block_comment_close: String,
    pub string_delim: char,
    pub char_delim: char,
}

const JAVA_KEYWORDS: &[&str] = &[
    "abstract", "assert", "boolean", "break", "byte", "case", "catch", "char", "class", "const",
    "continue", "default", "do", "double", "else", "enum", "extends", "false", "final", "finally",
    "float", "for", "goto", "if", "implements", "import", "instanceof", "int", "interface", "long",
    "native", "new", "null", "package", "private", "protected", "public", "return", "short",
    "static", "strictfp", "super", "switch", "synchronized", "this", "throw", "throws",
    "transient", "true", "try", "var", "void", "volatile", "while",
];

const C_KEYWORDS: &[&str] = &[
    "auto", "bool", "break", "case", "char", "const", "continue", "default", "do", "double",
    "else", "enum", "extern", "false", "float", "for", "goto", "if", "inline", "int", "long",
    "register", "restrict", "return", "short", "signed", "sizeof", "static", "struct", "switch",
    "true", "typedef", "union", "unsigned", "void", "volatile", "while", "NULL",
];

impl LanguageProfile {
    fn with_c_delims(name: &str, keywords: &[&str]) -> Self {
        LanguageProfile {
            name: name.to_string(),
            keywords: keywords.iter().map(|k| k.to_string()).collect(),
            line_comment: "//".to_string(),
            block_comment_open: "/*".to_string(),
            block_comment_close: "*/".to_string(),
            string_delim: '"',
            char_delim: '\'',
        }
    }

    pub fn java() -> Self {
        Self::with_c_delims("java", JAVA_KEYWORDS)
    }

    pub fn c() -> Self {
        Self::with_c_delims("c", C_KEYWORDS)
    }

    pub fn validate(&self) -> Result<(), ProfileError> {
        let invalid = |reason: &str| ProfileError::Invalid {
            name: self.name.clone(),
            reason: reason.to_string(),
        };
        if self.name.is_empty() {
            return Err(invalid("name is empty"));
        }
        if self.keywords.is_empty() {
            return Err(invalid("keyword set is empty"));
        }
        if let Some(k) = self
            .keywords
            .iter()
            .find(|k| k.is_empty() || k.chars().any(char::is_whitespace))
        {
            return Err(invalid(&format!("keyword {k:?} is empty or contains whitespace")));
        }
        if self.line_comment.is_empty()
            || self.block_comment_open.is_empty()
            || self.block_comment_close.is_empty()
        {
            return Err(invalid("comment delimiters must be non-empty"));
        }
        Ok(())
    }

    pub fn from_json_str(text: &str, origin: &str) -> Result<Self, ProfileError> {
        let profile: LanguageProfile =
            serde_json::from_str(text).map_err(|source| ProfileError::Parse {
                path: origin.to_string(),
                source,
            })?;
        profile.validate()?;
        Ok(profile)
    }

    pub fn from_json_file(path: &Path) -> Result<Self, ProfileError> {
        let text = fs::read_to_string(path).map_err(|source| ProfileError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json_str(&text, &path.display().to_string())
    }

    pub fn is_keyword(&self, word: &str) -> bool {
        self.keywords.contains(word)
    }
}

/// Named profiles available to a run: the built-ins plus any loaded files.
#[derive(Debug, Clone)]
pub struct ProfileRegistry {
    profiles: BTreeMap<String, LanguageProfile>,
}

impl Default for ProfileRegistry {
    fn default() -> Self {
        let mut profiles = BTreeMap::new();
        for p in [LanguageProfile::java(), LanguageProfile::c()] {
            profiles.insert(p.name.clone(), p);
        }
        ProfileRegistry { profiles }
    }
}

impl ProfileRegistry {
    /// Adds or replaces a profile under its own name.
    pub fn insert(&mut self, profile: LanguageProfile) -> Result<(), ProfileError> {
        profile.validate()?;
        self.profiles.insert(profile.name.clone(), profile);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Result<&LanguageProfile, ProfileError> {
        self.profiles
            .get(name)
            .ok_or_else(|| ProfileError::Unknown(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.profiles.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.profiles.keys().map(String::as_str)
    }
}
