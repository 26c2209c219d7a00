use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rgb(pub u8, pub u8, pub u8);

impl Rgb {
    pub const WHITE: Rgb = Rgb(255, 255, 255);
    pub const BLACK: Rgb = Rgb(0, 0, 0);

    pub fn channels(self) -> [u8; 3] {
        [self.0, self.1, self.2]
    }
}

#[derive(Debug, Error)]
pub enum ImageError {
    #[error("image dimensions must be positive, got {width}x{height}")]
    EmptyDimensions { width: u32, height: u32 },
    #[error("pixel buffer holds {actual} bytes, expected {expected}")]
    BufferSize { expected: usize, actual: usize },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("PNG encoding failed for {path}: {source}")]
    Encode {
        path: String,
        #[source]
        source: png::EncodingError,
    },
    #[error("PNG decoding failed for {path}: {source}")]
    Decode {
        path: String,
        #[source]
        source: png::DecodingError,
    },
    #[error("{path} is not an 8-bit RGB PNG ({detail})")]
    UnsupportedFormat { path: String, detail: String },
}

/// Row-major 8-bit RGB pixel grid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RasterImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl RasterImage {
    pub fn filled(width: u32, height: u32, color: Rgb) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::EmptyDimensions { width, height });
        }
        let n = width as usize * height as usize;
        let data = color.channels().iter().copied().cycle().take(n * 3).collect();
        Ok(RasterImage { width, height, data })
    }

    /// Wraps an interleaved RGB buffer of exactly `width * height * 3` bytes.
    pub fn from_raw(width: u32, height: u32, data: Vec<u8>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::EmptyDimensions { width, height });
        }
        let expected = width as usize * height as usize * 3;
        if data.len() != expected {
            return Err(ImageError::BufferSize {
                expected,
                actual: data.len(),
            });
        }
        Ok(RasterImage { width, height, data })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    /// Interleaved RGB bytes, row-major.
    pub fn as_bytes(&self) -> &[u8] {
        &self.data
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.data
    }

    fn offset(&self, x: u32, y: u32) -> usize {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) out of bounds");
        (y as usize * self.width as usize + x as usize) * 3
    }

    pub fn pixel(&self, x: u32, y: u32) -> Rgb {
        let o = self.offset(x, y);
        Rgb(self.data[o], self.data[o + 1], self.data[o + 2])
    }

    pub fn set_pixel(&mut self, x: u32, y: u32, color: Rgb) {
        let o = self.offset(x, y);
        self.data[o..o + 3].copy_from_slice(&color.channels());
    }

    pub fn pixels(&self) -> impl Iterator<Item = Rgb> + '_ {
        self.data.chunks_exact(3).map(|p| Rgb(p[0], p[1], p[2]))
    }
}

fn encode_into<W: Write>(image: &RasterImage, sink: W, path: &str) -> Result<(), ImageError> {
    let err = |source| ImageError::Encode {
        path: path.to_string(),
        source,
    };
    let mut encoder = png::Encoder::new(sink, image.width, image.height);
    encoder.set_color(png::ColorType::Rgb);
    encoder.set_depth(png::BitDepth::Eight);
    let mut writer = encoder.write_header().map_err(err)?;
    writer.write_image_data(&image.data).map_err(err)?;
    writer.finish().map_err(err)
}

/// Encodes `image` as a lossless 8-bit RGB PNG in memory.
pub fn encode_png(image: &RasterImage) -> Result<Vec<u8>, ImageError> {
    let mut buf = Vec::new();
    encode_into(image, &mut buf, "<memory>")?;
    Ok(buf)
}

/// Writes `image` as a lossless 8-bit RGB PNG.
pub fn write_image(image: &RasterImage, path: &Path) -> Result<(), ImageError> {
    let p = || path.display().to_string();
    let file = File::create(path).map_err(|source| ImageError::Io { path: p(), source })?;
    encode_into(image, BufWriter::new(file), &p())
}

/// Reads an 8-bit RGB PNG (as produced by [`write_image`]).
pub fn read_image(path: &Path) -> Result<RasterImage, ImageError> {
    let p = || path.display().to_string();
    let file = File::open(path).map_err(|source| ImageError::Io { path: p(), source })?;
    let decoder = png::Decoder::new(BufReader::new(file));
    let mut reader = decoder
        .read_info()
        .map_err(|source| ImageError::Decode { path: p(), source })?;
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| ImageError::UnsupportedFormat {
            path: p(),
            detail: "image too large".into(),
        })?;
    let mut buf = vec![0; size];
    let info = reader
        .next_frame(&mut buf)
        .map_err(|source| ImageError::Decode { path: p(), source })?;
    if info.color_type != png::ColorType::Rgb || info.bit_depth != png::BitDepth::Eight {
        return Err(ImageError::UnsupportedFormat {
            path: p(),
            detail: format!("{:?} at {:?}", info.color_type, info.bit_depth),
        });
    }
    buf.truncate(info.buffer_size());
    RasterImage::from_raw(info.width, info.height, buf)
}
