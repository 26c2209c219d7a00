use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap, HashSet};
use std::fmt;
use std::str::FromStr;

use super::{cosine_similarity, euclidean_distance, TaskError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Metric {
    /// `1 - cosine similarity`
    #[default]
    CosineDistance,
    Euclidean,
}

impl Metric {
    pub fn distance(self, a: &[f64], b: &[f64]) -> Result<f64, TaskError> {
        match self {
            Metric::CosineDistance => Ok(1.0 - cosine_similarity(a, b)?),
            Metric::Euclidean => euclidean_distance(a, b),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Metric::CosineDistance => "cosine",
            Metric::Euclidean => "euclidean",
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Metric {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cosine" | "cosine-distance" => Ok(Metric::CosineDistance),
            "euclidean" => Ok(Metric::Euclidean),
            other => Err(format!("unknown metric `{other}` (expected cosine or euclidean)")),
        }
    }
}

#[derive(Debug, Clone)]
struct Entry {
    id: String,
    label: String,
    values: Vec<f64>,
}

/// Labeled embeddings for nearest-neighbor lookup. Immutable once built.
#[derive(Debug, Clone)]
pub struct NeighborIndex {
    entries: Vec<Entry>,
    dim: usize,
    metric: Metric,
}

impl NeighborIndex {
    /// Builds an index from `(id, label, values)` records.
    pub fn new(
        records: impl IntoIterator<Item = (String, String, Vec<f64>)>,
        metric: Metric,
    ) -> Result<Self, TaskError> {
        let mut entries = Vec::new();
        let mut ids = HashSet::new();
        let mut dim = None;
        for (id, label, values) in records {
            if label.is_empty() {
                return Err(TaskError::EmptyLabel(id));
            }
            if !ids.insert(id.clone()) {
                return Err(TaskError::DuplicateId(id));
            }
            match dim {
                None => dim = Some(values.len()),
                Some(d) if d != values.len() => {
                    return Err(TaskError::DimensionMismatch(d, values.len()))
                }
                _ => {}
            }
            entries.push(Entry { id, label, values });
        }
        Ok(NeighborIndex {
            entries,
            dim: dim.unwrap_or(0),
            metric,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }
}

/// Heap item ordered by (distance, id); the max-heap keeps the k best.
struct Candidate<'a> {
    distance: f64,
    entry: &'a Entry,
}

impl Ord for Candidate<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.distance
            .total_cmp(&other.distance)
            .then_with(|| self.entry.id.cmp(&other.entry.id))
    }
}

impl PartialOrd for Candidate<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for Candidate<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Candidate<'_> {}

/// Majority label among the `k` nearest entries.
///
/// Distance ties at the k-th place go to the smaller id. Vote ties go to
/// the label whose nearest member is closer, then to the smaller label.
pub fn knn_classify(index: &NeighborIndex, query: &[f64], k: usize) -> Result<String, TaskError> {
    if index.is_empty() {
        return Err(TaskError::EmptyIndex);
    }
    if k == 0 || k > index.len() {
        return Err(TaskError::InvalidK { k, size: index.len() });
    }
    if query.len() != index.dim {
        return Err(TaskError::DimensionMismatch(index.dim, query.len()));
    }

    let mut heap = BinaryHeap::with_capacity(k + 1);
    for entry in &index.entries {
        let distance = index.metric.distance(&entry.values, query)?;
        let cand = Candidate { distance, entry };
        if heap.len() < k {
            heap.push(cand);
        } else if heap.peek().is_some_and(|worst| cand < *worst) {
            heap.pop();
            heap.push(cand);
        }
    }
    let nearest = heap.into_sorted_vec();

    // label -> (votes, distance of nearest member)
    let mut votes: BTreeMap<&str, (usize, f64)> = BTreeMap::new();
    for c in &nearest {
        votes
            .entry(&c.entry.label)
            .and_modify(|v| v.0 += 1)
            .or_insert((1, c.distance));
    }
    let winner = votes
        .into_iter()
        .min_by(|(la, (na, da)), (lb, (nb, db))| {
            nb.cmp(na).then(da.total_cmp(db)).then(la.cmp(lb))
        })
        .map(|(label, _)| label.to_string())
        .expect("k >= 1");
    Ok(winner)
}
