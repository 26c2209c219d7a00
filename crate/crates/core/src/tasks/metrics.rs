use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use super::{ClonePair, TaskError};

/// Confusion counts and the scores derived from them. Empty denominators
/// yield 0 rather than NaN.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    pub true_positives: usize,
    pub false_positives: usize,
    pub true_negatives: usize,
    pub false_negatives: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub accuracy: f64,
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl Metrics {
    pub fn from_counts(tp: usize, fp: usize, tn: usize, fn_: usize) -> Self {
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        Metrics {
            true_positives: tp,
            false_positives: fp,
            true_negatives: tn,
            false_negatives: fn_,
            precision,
            recall,
            f1,
            accuracy: ratio(tp + tn, tp + fp + tn + fn_),
        }
    }

    /// Metrics of boolean predictions against boolean truth.
    pub fn from_decisions(decisions: impl IntoIterator<Item = (bool, bool)>) -> Self {
        let (mut tp, mut fp, mut tn, mut fn_) = (0, 0, 0, 0);
        for (predicted, actual) in decisions {
            match (predicted, actual) {
                (true, true) => tp += 1,
                (true, false) => fp += 1,
                (false, false) => tn += 1,
                (false, true) => fn_ += 1,
            }
        }
        Self::from_counts(tp, fp, tn, fn_)
    }

    pub fn total(&self) -> usize {
        self.true_positives + self.false_positives + self.true_negatives + self.false_negatives
    }
}

/// Similarity scores keyed by unordered id pair.
#[derive(Debug, Clone, Default)]
pub struct PairScores {
    scores: HashMap<(String, String), f64>,
}

fn key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

impl PairScores {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, a: &str, b: &str, score: f64) {
        self.scores.insert(key(a, b), score);
    }

    pub fn get(&self, a: &str, b: &str) -> Option<f64> {
        self.scores.get(&key(a, b)).copied()
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }
}

/// Thresholds every pair's score (`score >= threshold` means clone) and
/// compares against the labels.
pub fn evaluate_pairs(
    pairs: &[ClonePair],
    scores: &PairScores,
    threshold: f64,
) -> Result<Metrics, TaskError> {
    let decisions = pairs
        .iter()
        .map(|p| {
            scores
                .get(p.id_a(), p.id_b())
                .map(|s| (s >= threshold, p.label))
                .ok_or_else(|| TaskError::MissingScore(p.id_a().into(), p.id_b().into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Metrics::from_decisions(decisions))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub accuracy: f64,
    /// One-vs-rest metrics for every label seen in either map.
    pub per_label: BTreeMap<String, Metrics>,
}

pub fn evaluate_classification(
    predictions: &HashMap<String, String>,
    truth: &HashMap<String, String>,
) -> Result<ClassificationReport, TaskError> {
    let missing: BTreeSet<&str> = truth
        .keys()
        .filter(|id| !predictions.contains_key(*id))
        .chain(predictions.keys().filter(|id| !truth.contains_key(*id)))
        .map(String::as_str)
        .collect();
    if !missing.is_empty() {
        let ids: Vec<&str> = missing.into_iter().take(5).collect();
        return Err(TaskError::IdMismatch(ids.join(", ")));
    }

    let correct = truth.iter().filter(|(id, l)| &predictions[*id] == *l).count();
    let labels: BTreeSet<&String> = truth.values().chain(predictions.values()).collect();
    let per_label = labels
        .into_iter()
        .map(|label| {
            let m = Metrics::from_decisions(
                truth
                    .iter()
                    .map(|(id, t)| (&predictions[id] == label, t == label)),
            );
            (label.clone(), m)
        })
        .collect();
    Ok(ClassificationReport {
        accuracy: ratio(correct, truth.len()),
        per_label,
    })
}
