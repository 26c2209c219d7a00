//! Downstream tasks over embeddings: clone detection, threshold calibration,
//! kNN classification and evaluation metrics.

mod calibrate;
mod knn;
mod metrics;
mod similarity;

use thiserror::Error;

pub use self::calibrate::{calibrate_threshold, candidate_thresholds, Calibration};
pub use self::knn::{knn_classify, Metric, NeighborIndex};
pub use self::metrics::{
    evaluate_classification, evaluate_pairs, ClassificationReport, Metrics, PairScores,
};
pub use self::similarity::{cosine_similarity, detect_clone, euclidean_distance};

#[derive(Debug, Error, PartialEq)]
pub enum TaskError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("cosine similarity is undefined for a zero vector")]
    ZeroVector,
    #[error("non-finite value in input")]
    NonFinite,
    #[error("calibration needs at least one positive and one negative pair")]
    SingleClass,
    #[error("index is empty")]
    EmptyIndex,
    #[error("k must be between 1 and the index size {size}, got {k}")]
    InvalidK { k: usize, size: usize },
    #[error("duplicate index id `{0}`")]
    DuplicateId(String),
    #[error("label for `{0}` is empty")]
    EmptyLabel(String),
    #[error("no score for pair ({0}, {1})")]
    MissingScore(String, String),
    #[error("prediction and truth id sets differ: {0}")]
    IdMismatch(String),
    #[error("clone pair ids must differ, got `{0}` twice")]
    SelfPair(String),
}

/// Two snippet ids and whether they are semantic clones.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ClonePair {
    id_a: String,
    id_b: String,
    pub label: bool,
}

impl ClonePair {
    pub fn new(id_a: &str, id_b: &str, label: bool) -> Result<Self, TaskError> {
        if id_a == id_b {
            return Err(TaskError::SelfPair(id_a.to_string()));
        }
        Ok(ClonePair {
            id_a: id_a.to_string(),
            id_b: id_b.to_string(),
            label,
        })
    }

    pub fn id_a(&self) -> &str {
        &self.id_a
    }

    pub fn id_b(&self) -> &str {
        &self.id_b
    }
}
