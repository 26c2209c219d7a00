//! Corpus ingestion: JSONL snippet manifests and CSV clone-pair lists.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::render::ProfileRegistry;
use crate::tasks::ClonePair;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Line {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Format { path: String, message: String },
}

impl DataError {
    /// 1-based line number the error refers to, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            DataError::Line { line, .. } => Some(*line),
            _ => None,
        }
    }
}

/// One snippet: where it lives, its optional class label and language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub id: String,
    pub path: PathBuf,
    pub label: Option<String>,
    pub language: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusManifest {
    pub entries: Vec<ManifestEntry>,
}

impl CorpusManifest {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.entries.iter().any(|e| e.id == id)
    }

    pub fn get(&self, id: &str) -> Option<&ManifestEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    /// Labels by id for the labeled entries.
    pub fn labels(&self) -> HashMap<String, String> {
        self.entries
            .iter()
            .filter_map(|e| e.label.clone().map(|l| (e.id.clone(), l)))
            .collect()
    }
}

#[derive(Deserialize)]
struct RawEntry {
    id: String,
    path: PathBuf,
    #[serde(default)]
    label: Option<String>,
    language: String,
}

/// Parses JSONL manifest text. Relative paths are joined onto `base`.
pub fn parse_manifest(
    text: &str,
    origin: &str,
    base: &Path,
    profiles: &ProfileRegistry,
) -> Result<CorpusManifest, DataError> {
    let err = |line: usize, message: String| DataError::Line {
        path: origin.to_string(),
        line,
        message,
    };
    let mut seen: HashMap<String, usize> = HashMap::new();
    let mut entries = Vec::new();
    for (ix, line) in text.lines().enumerate() {
        let lineno = ix + 1;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawEntry = serde_json::from_str(line)
            .map_err(|e| err(lineno, format!("malformed manifest line: {e}")))?;
        if raw.id.is_empty() {
            return Err(err(lineno, "empty id".into()));
        }
        if let Some(first) = seen.insert(raw.id.clone(), lineno) {
            return Err(err(
                lineno,
                format!("duplicate id `{}` (first defined on line {first})", raw.id),
            ));
        }
        if !profiles.contains(&raw.language) {
            return Err(err(lineno, format!("unknown language `{}`", raw.language)));
        }
        if raw.label.as_deref() == Some("") {
            return Err(err(lineno, "label must be non-empty when present".into()));
        }
        let path = if raw.path.is_relative() {
            base.join(&raw.path)
        } else {
            raw.path
        };
        entries.push(ManifestEntry {
            id: raw.id,
            path,
            label: raw.label,
            language: raw.language,
        });
    }
    Ok(CorpusManifest { entries })
}

/// Loads a JSONL manifest; snippet paths are relative to the manifest's directory.
pub fn load_manifest(path: &Path, profiles: &ProfileRegistry) -> Result<CorpusManifest, DataError> {
    let text = fs::read_to_string(path).map_err(|source| DataError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let base = path.parent().unwrap_or(Path::new(""));
    parse_manifest(&text, &path.display().to_string(), base, profiles)
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClonePairList {
    pub pairs: Vec<ClonePair>,
}

impl ClonePairList {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Parses `id_a,id_b,label` CSV. `known` decides which ids exist. Errors
/// carry the 1-based line number within the file (the header is line 1).
pub fn parse_pairs(
    text: &str,
    origin: &str,
    known: impl Fn(&str) -> bool,
) -> Result<ClonePairList, DataError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| DataError::Format {
        path: origin.to_string(),
        message: format!("cannot read header: {e}"),
    })?;
    if headers.iter().collect::<Vec<_>>() != ["id_a", "id_b", "label"] {
        return Err(DataError::Line {
            path: origin.to_string(),
            line: 1,
            message: format!("expected header `id_a,id_b,label`, found `{}`", headers.iter().collect::<Vec<_>>().join(",")),
        });
    }

    let mut seen: HashSet<(String, String)> = HashSet::new();
    let mut pairs = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            DataError::Line {
                path: origin.to_string(),
                line,
                message: format!("malformed row: {e}"),
            }
        })?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let err = |message: String| DataError::Line {
            path: origin.to_string(),
            line,
            message,
        };
        if record.len() != 3 {
            return Err(err(format!("expected 3 fields, found {}", record.len())));
        }
        let (a, b) = (&record[0], &record[1]);
        let label = match &record[2] {
            "1" => true,
            "0" => false,
            other => return Err(err(format!("label must be 0 or 1, found `{other}`"))),
        };
        for id in [a, b] {
            if !known(id) {
                return Err(err(format!("unknown id `{id}`")));
            }
        }
        if a == b {
            return Err(err(format!("self-pair `{a}`")));
        }
        let key = if a < b {
            (a.to_string(), b.to_string())
        } else {
            (b.to_string(), a.to_string())
        };
        if !seen.insert(key) {
            return Err(err(format!("duplicate pair ({a}, {b})")));
        }
        pairs.push(ClonePair::new(a, b, label).expect("distinct ids checked above"));
    }
    Ok(ClonePairList { pairs })
}

/// Loads a pair list whose ids must all appear in `manifest`.
pub fn load_pairs(path: &Path, manifest: &CorpusManifest) -> Result<ClonePairList, DataError> {
    let ids: HashSet<&str> = manifest.entries.iter().map(|e| e.id.as_str()).collect();
    load_pairs_with(path, |id| ids.contains(id))
}

/// Loads a pair list, checking ids with `known`.
pub fn load_pairs_with(
    path: &Path,
    known: impl Fn(&str) -> bool,
) -> Result<ClonePairList, DataError> {
    let text = fs::read_to_string(path).map_err(|source| DataError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_pairs(&text, &path.display().to_string(), known)
}
