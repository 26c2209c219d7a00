//! Deterministic fallback extractor: per-channel means over an 8x8 patch grid.

use crate::preprocess::InputTensor;

pub const PATCH_GRID: usize = 8;
pub const PATCH_MEAN_DIM: usize = InputTensor::CHANNELS * PATCH_GRID * PATCH_GRID;

/// Mean of each channel over each cell of an 8x8 grid of equal patches.
///
/// Output index is `channel * 64 + patch_row * 8 + patch_col`. Both tensor
/// dimensions must be divisible by 8; callers check this at model load.
pub fn patch_mean(tensor: &InputTensor) -> Vec<f64> {
    let (h, w) = (tensor.height(), tensor.width());
    debug_assert!(h % PATCH_GRID == 0 && w % PATCH_GRID == 0);
    let (ph, pw) = (h / PATCH_GRID, w / PATCH_GRID);
    let count = (ph * pw) as f64;
    let mut out = Vec::with_capacity(PATCH_MEAN_DIM);
    for c in 0..InputTensor::CHANNELS {
        let plane = tensor.plane(c);
        for py in 0..PATCH_GRID {
            for px in 0..PATCH_GRID {
                let sum: f64 = (py * ph..(py + 1) * ph)
                    .map(|row| plane[row * w + px * pw..row * w + (px + 1) * pw].iter().sum::<f64>())
                    .sum();
                out.push(sum / count);
            }
        }
    }
    out
}
