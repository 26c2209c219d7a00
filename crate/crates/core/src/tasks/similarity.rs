use super::TaskError;

fn check<T: Copy + Into<f64>>(a: &[T], b: &[T]) -> Result<(), TaskError> {
    if a.len() != b.len() {
        return Err(TaskError::DimensionMismatch(a.len(), b.len()));
    }
    if a.iter().chain(b).any(|&x| !x.into().is_finite()) {
        return Err(TaskError::NonFinite);
    }
    Ok(())
}

/// `dot(a, b) / (|a| |b|)` in f64, clamped to `[-1, 1]`. Zero vectors are an error.
pub fn cosine_similarity<T: Copy + Into<f64>>(a: &[T], b: &[T]) -> Result<f64, TaskError> {
    check(a, b)?;
    let (dot, na, nb) = sums(a, b, 1.0, 1.0);
    let (dot, na, nb) = if dot.is_finite() && na.is_finite() && nb.is_finite() {
        (dot, na, nb)
    } else {
        // squares overflowed; rescale each side by its largest magnitude
        let peak = |v: &[T]| v.iter().fold(0.0f64, |m, &x| m.max(x.into().abs()));
        sums(a, b, peak(a), peak(b))
    };
    if na == 0.0 || nb == 0.0 {
        return Err(TaskError::ZeroVector);
    }
    // sqrt(na * nb) is exact for a == b, so identical inputs score exactly 1
    let prod = na * nb;
    let denom = if prod.is_finite() && prod > 0.0 {
        prod.sqrt()
    } else {
        na.sqrt() * nb.sqrt()
    };
    Ok((dot / denom).clamp(-1.0, 1.0))
}

fn sums<T: Copy + Into<f64>>(a: &[T], b: &[T], sa: f64, sb: f64) -> (f64, f64, f64) {
    let (mut dot, mut na, mut nb) = (0.0f64, 0.0f64, 0.0f64);
    for (&x, &y) in a.iter().zip(b) {
        let (x, y) = (x.into() / sa, y.into() / sb);
        dot += x * y;
        na += x * x;
        nb += y * y;
    }
    (dot, na, nb)
}

pub fn euclidean_distance<T: Copy + Into<f64>>(a: &[T], b: &[T]) -> Result<f64, TaskError> {
    check(a, b)?;
    Ok(a
        .iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = x.into() - y.into();
            d * d
        })
        .sum::<f64>()
        .sqrt())
}

/// Cosine score and the inclusive decision `score >= threshold`.
pub fn detect_clone<T: Copy + Into<f64>>(
    a: &[T],
    b: &[T],
    threshold: f64,
) -> Result<(f64, bool), TaskError> {
    let score = cosine_similarity(a, b)?;
    Ok((score, score >= threshold))
}
