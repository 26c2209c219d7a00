//! Image to network input: bilinear resize and per-channel normalization.

use thiserror::Error;

use crate::render::RasterImage;

#[derive(Debug, Error, PartialEq)]
pub enum PreprocessError {
    #[error("target size must be positive, got {width}x{height}")]
    EmptyTarget { width: u32, height: u32 },
    #[error("std component {channel} is zero")]
    ZeroStd { channel: usize },
    #[error("normalization constants must be finite")]
    NonFiniteConstant,
}

/// Channel-major `(channel, row, column)` float tensor with three channels.
#[derive(Debug, Clone, PartialEq)]
pub struct InputTensor {
    height: usize,
    width: usize,
    values: Vec<f64>,
}

impl InputTensor {
    pub const CHANNELS: usize = 3;

    /// Returns `None` unless `values.len() == 3 * height * width` and every value is finite.
    pub fn new(height: usize, width: usize, values: Vec<f64>) -> Option<Self> {
        (values.len() == Self::CHANNELS * height * width && values.iter().all(|v| v.is_finite()))
            .then_some(InputTensor {
                height,
                width,
                values,
            })
    }

    pub fn filled(height: usize, width: usize, value: f64) -> Self {
        InputTensor {
            height,
            width,
            values: vec![value; Self::CHANNELS * height * width],
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, channel: usize, row: usize, col: usize) -> f64 {
        self.values[(channel * self.height + row) * self.width + col]
    }

    /// The `height * width` plane of one channel.
    pub fn plane(&self, channel: usize) -> &[f64] {
        let n = self.height * self.width;
        &self.values[channel * n..(channel + 1) * n]
    }
}

/// Source coordinate for output index `dst` under half-pixel centers,
/// as (lower index, upper index, weight of upper).
fn sample_axis(dst: u32, src_len: u32, dst_len: u32) -> (usize, usize, f64) {
    let scale = src_len as f64 / dst_len as f64;
    let pos = ((dst as f64 + 0.5) * scale - 0.5).clamp(0.0, (src_len - 1) as f64);
    let lo = pos.floor() as usize;
    let hi = (lo + 1).min(src_len as usize - 1);
    (lo, hi, pos - lo as f64)
}

/// Bilinear resize with half-pixel-center sampling; each channel is rounded
/// to the nearest integer with ties away from zero.
pub fn resize_bilinear(
    image: &RasterImage,
    width: u32,
    height: u32,
) -> Result<RasterImage, PreprocessError> {
    if width == 0 || height == 0 {
        return Err(PreprocessError::EmptyTarget { width, height });
    }
    if width == image.width() && height == image.height() {
        return Ok(image.clone());
    }
    let src = image.as_bytes();
    let stride = image.width() as usize * 3;
    let xs: Vec<_> = (0..width)
        .map(|x| sample_axis(x, image.width(), width))
        .collect();
    let mut out = Vec::with_capacity(width as usize * height as usize * 3);
    for y in 0..height {
        let (y0, y1, wy) = sample_axis(y, image.height(), height);
        for &(x0, x1, wx) in &xs {
            for c in 0..3 {
                let at = |yy: usize, xx: usize| src[yy * stride + xx * 3 + c] as f64;
                let top = at(y0, x0) * (1.0 - wx) + at(y0, x1) * wx;
                let bottom = at(y1, x0) * (1.0 - wx) + at(y1, x1) * wx;
                let v = top * (1.0 - wy) + bottom * wy;
                out.push(v.round().clamp(0.0, 255.0) as u8);
            }
        }
    }
    Ok(RasterImage::from_raw(width, height, out).expect("buffer sized from target dimensions"))
}

/// `(pixel / 255 - mean[c]) / std[c]`, laid out channel-major.
pub fn normalize(
    image: &RasterImage,
    mean: [f64; 3],
    std: [f64; 3],
) -> Result<InputTensor, PreprocessError> {
    if mean.iter().chain(std.iter()).any(|v| !v.is_finite()) {
        return Err(PreprocessError::NonFiniteConstant);
    }
    if let Some(channel) = std.iter().position(|&s| s == 0.0) {
        return Err(PreprocessError::ZeroStd { channel });
    }
    let (w, h) = (image.width() as usize, image.height() as usize);
    let bytes = image.as_bytes();
    let mut values = vec![0.0; 3 * w * h];
    for (c, plane) in values.chunks_exact_mut(w * h).enumerate() {
        for (i, v) in plane.iter_mut().enumerate() {
            *v = (bytes[i * 3 + c] as f64 / 255.0 - mean[c]) / std[c];
        }
    }
    Ok(InputTensor {
        height: h,
        width: w,
        values,
    })
}
