use serde::Serialize;

use super::{Metrics, TaskError};

/// Chosen decision threshold and the F1 it achieves on the calibration pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Calibration {
    pub threshold: f64,
    pub f1: f64,
}

/// Sorted distinct scores.
fn distinct_sorted(scores: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut v: Vec<f64> = scores.into_iter().collect();
    v.sort_by(f64::total_cmp);
    v.dedup();
    v
}

/// A point strictly above `lo` and at most `hi`, as close to the middle as
/// floating point allows.
fn midpoint(lo: f64, hi: f64) -> f64 {
    let mid = lo + (hi - lo) / 2.0;
    if mid > lo {
        mid
    } else {
        hi
    }
}

/// Candidate thresholds in ascending order: one below the smallest score,
/// the midpoints between consecutive distinct scores, one above the largest.
pub fn candidate_thresholds(scores: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let distinct = distinct_sorted(scores);
    let (Some(&first), Some(&last)) = (distinct.first(), distinct.last()) else {
        return Vec::new();
    };
    let mut out = Vec::with_capacity(distinct.len() + 1);
    out.push(first - first.abs().max(1.0));
    out.extend(distinct.windows(2).map(|w| midpoint(w[0], w[1])));
    out.push(last + last.abs().max(1.0));
    out
}

/// Picks the candidate threshold maximizing F1 of `score >= threshold`;
/// ties go to the smallest threshold.
pub fn calibrate_threshold(pairs: &[(f64, bool)]) -> Result<Calibration, TaskError> {
    if pairs.iter().any(|(s, _)| !s.is_finite()) {
        return Err(TaskError::NonFinite);
    }
    let positives = pairs.iter().filter(|(_, l)| *l).count();
    let negatives = pairs.len() - positives;
    if positives == 0 || negatives == 0 {
        return Err(TaskError::SingleClass);
    }

    let mut sorted: Vec<(f64, bool)> = pairs.to_vec();
    sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
    let distinct = distinct_sorted(pairs.iter().map(|p| p.0));
    let candidates = candidate_thresholds(distinct.iter().copied());

    // Candidate j predicts "clone" for every pair whose distinct-score rank is >= j.
    let mut pos_by_rank = vec![0usize; distinct.len()];
    let mut neg_by_rank = vec![0usize; distinct.len()];
    let mut rank = 0;
    for (score, label) in &sorted {
        while distinct[rank] != *score {
            rank += 1;
        }
        if *label {
            pos_by_rank[rank] += 1;
        } else {
            neg_by_rank[rank] += 1;
        }
    }

    let (mut tp, mut fp) = (positives, negatives);
    // (threshold, tp, fp) of the best candidate so far
    let mut best: Option<(f64, usize, usize)> = None;
    for (j, &threshold) in candidates.iter().enumerate() {
        if j > 0 {
            tp -= pos_by_rank[j - 1];
            fp -= neg_by_rank[j - 1];
        }
        if best.is_none_or(|(_, btp, bfp)| f1_greater((tp, fp), (btp, bfp), positives)) {
            best = Some((threshold, tp, fp));
        }
    }
    let (threshold, tp, fp) = best.expect("at least two candidates");
    let f1 = Metrics::from_counts(tp, fp, negatives - fp, positives - tp).f1;
    Ok(Calibration { threshold, f1 })
}

/// Exact `F1(a) > F1(b)` using `F1 = 2tp / (2tp + fp + fn)`, so candidates
/// that tie mathematically never differ by rounding.
fn f1_greater(a: (usize, usize), b: (usize, usize), positives: usize) -> bool {
    let frac = |(tp, fp): (usize, usize)| {
        let num = 2 * tp as u128;
        let den = num + fp as u128 + (positives - tp) as u128;
        (num, den)
    };
    let ((na, da), (nb, db)) = (frac(a), frac(b));
    // denominators are positive because positives >= 1
    na * db > nb * da
}
