//! Binary embedding cache.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "WEMB" | version: u32 = 1 | dim: u32 | count: u64
//! count x ( id_len: u32 | id: UTF-8 bytes | dim x f32 )
//! ```
//!
//! Records are stored sorted by id, so the same set of vectors always
//! produces the same bytes.

use std::fs;
use std::path::Path;

use thiserror::Error;

use super::EmbeddingVector;

pub const MAGIC: &[u8; 4] = b"WEMB";
pub const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("not an embedding cache: bad magic {0:02x?}")]
    BadMagic(Vec<u8>),
    #[error("unsupported cache version {0}")]
    UnsupportedVersion(u32),
    #[error("cache truncated while reading {0}")]
    Truncated(&'static str),
    #[error("{0} trailing bytes after the last record")]
    TrailingBytes(usize),
    #[error("vector `{id}` has dimension {actual}, cache dimension is {expected}")]
    DimensionMismatch {
        id: String,
        expected: usize,
        actual: usize,
    },
    #[error("duplicate id `{0}`")]
    DuplicateId(String),
    #[error("record {index} has a non-UTF-8 id")]
    InvalidId { index: u64 },
    #[error("value {index} of `{id}` is not finite")]
    NonFinite { id: String, index: usize },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// Serializes `vectors` (in any order) to cache bytes.
pub fn encode_cache(vectors: &[EmbeddingVector]) -> Result<Vec<u8>, CacheError> {
    let mut sorted: Vec<&EmbeddingVector> = vectors.iter().collect();
    sorted.sort_by(|a, b| a.id.cmp(&b.id));
    if let Some(w) = sorted.windows(2).find(|w| w[0].id == w[1].id) {
        return Err(CacheError::DuplicateId(w[0].id.clone()));
    }
    let dim = sorted.first().map_or(0, |v| v.values.len());
    for v in &sorted {
        if v.values.len() != dim {
            return Err(CacheError::DimensionMismatch {
                id: v.id.clone(),
                expected: dim,
                actual: v.values.len(),
            });
        }
    }
    let dim32 = u32::try_from(dim).map_err(|_| CacheError::DimensionMismatch {
        id: sorted[0].id.clone(),
        expected: u32::MAX as usize,
        actual: dim,
    })?;

    let record_bytes: usize = sorted.iter().map(|v| 4 + v.id.len() + 4 * dim).sum();
    let mut buf = Vec::with_capacity(20 + record_bytes);
    buf.extend_from_slice(MAGIC);
    buf.extend_from_slice(&VERSION.to_le_bytes());
    buf.extend_from_slice(&dim32.to_le_bytes());
    buf.extend_from_slice(&(sorted.len() as u64).to_le_bytes());
    for v in sorted {
        buf.extend_from_slice(&(v.id.len() as u32).to_le_bytes());
        buf.extend_from_slice(v.id.as_bytes());
        for x in &v.values {
            buf.extend_from_slice(&x.to_le_bytes());
        }
    }
    Ok(buf)
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &'static str) -> Result<&'a [u8], CacheError> {
        let end = self
            .pos
            .checked_add(n)
            .filter(|&e| e <= self.bytes.len())
            .ok_or(CacheError::Truncated(what))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u32(&mut self, what: &'static str) -> Result<u32, CacheError> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    fn u64(&mut self, what: &'static str) -> Result<u64, CacheError> {
        Ok(u64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }
}

/// Parses cache bytes back into vectors (sorted by id).
pub fn decode_cache(bytes: &[u8]) -> Result<Vec<EmbeddingVector>, CacheError> {
    let mut r = Reader { bytes, pos: 0 };
    if bytes.len() < MAGIC.len() && !MAGIC.starts_with(bytes) {
        return Err(CacheError::BadMagic(bytes.to_vec()));
    }
    let magic = r.take(4, "magic")?;
    if magic != MAGIC {
        return Err(CacheError::BadMagic(magic.to_vec()));
    }
    let version = r.u32("version")?;
    if version != VERSION {
        return Err(CacheError::UnsupportedVersion(version));
    }
    let dim = r.u32("dimension")? as usize;
    let count = r.u64("count")?;

    // Each record needs at least 4 + 4 * dim bytes; reject absurd counts before allocating.
    let min_record = 4 + 4 * dim as u64;
    let remaining = (bytes.len() - r.pos) as u64;
    if count.saturating_mul(min_record) > remaining {
        return Err(CacheError::Truncated("records"));
    }

    let mut out: Vec<EmbeddingVector> = Vec::with_capacity(count as usize);
    for index in 0..count {
        let id_len = r.u32("id length")? as usize;
        let id = std::str::from_utf8(r.take(id_len, "id")?)
            .map_err(|_| CacheError::InvalidId { index })?
            .to_string();
        let raw = r.take(4 * dim, "values")?;
        let values: Vec<f32> = raw
            .chunks_exact(4)
            .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
            .collect();
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(CacheError::NonFinite { id, index: i });
        }
        out.push(EmbeddingVector { id, values });
    }
    if r.pos != bytes.len() {
        return Err(CacheError::TrailingBytes(bytes.len() - r.pos));
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    if let Some(w) = out.windows(2).find(|w| w[0].id == w[1].id) {
        return Err(CacheError::DuplicateId(w[0].id.clone()));
    }
    Ok(out)
}

pub fn write_cache(vectors: &[EmbeddingVector], path: &Path) -> Result<(), CacheError> {
    let bytes = encode_cache(vectors)?;
    fs::write(path, bytes).map_err(|source| CacheError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_cache(path: &Path) -> Result<Vec<EmbeddingVector>, CacheError> {
    let bytes = fs::read(path).map_err(|source| CacheError::Io {
        path: path.display().to_string(),
        source,
    })?;
    decode_cache(&bytes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(id: &str, values: &[f32]) -> EmbeddingVector {
        EmbeddingVector {
            id: id.into(),
            values: values.to_vec(),
        }
    }

    #[test]
    fn empty_cache() {
        let bytes = encode_cache(&[]).unwrap();
        assert_eq!(bytes.len(), 20);
        assert_eq!(&bytes[..4], b"WEMB");
        assert_eq!(&bytes[12..20], &0u64.to_le_bytes());
        assert!(decode_cache(&bytes).unwrap().is_empty());
    }

    #[test]
    fn exact_layout() {
        let bytes = encode_cache(&[v("b", &[1.0]), v("a", &[-2.5])]).unwrap();
        let mut expected = b"WEMB".to_vec();
        expected.extend(1u32.to_le_bytes());
        expected.extend(1u32.to_le_bytes());
        expected.extend(2u64.to_le_bytes());
        expected.extend(1u32.to_le_bytes());
        expected.extend(b"a");
        expected.extend((-2.5f32).to_le_bytes());
        expected.extend(1u32.to_le_bytes());
        expected.extend(b"b");
        expected.extend(1.0f32.to_le_bytes());
        assert_eq!(bytes, expected);
    }

    #[test]
    fn sorted_regardless_of_insertion_order() {
        let a = encode_cache(&[v("z", &[1.0, 2.0]), v("m", &[3.0, 4.0])]).unwrap();
        let b = encode_cache(&[v("m", &[3.0, 4.0]), v("z", &[1.0, 2.0])]).unwrap();
        assert_eq!(a, b);
        let ids: Vec<_> = decode_cache(&a).unwrap().into_iter().map(|v| v.id).collect();
        assert_eq!(ids, vec!["m", "z"]);
    }

    #[test]
    fn write_errors() {
        assert!(matches!(
            encode_cache(&[v("a", &[1.0]), v("b", &[1.0, 2.0])]),
            Err(CacheError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            encode_cache(&[v("a", &[1.0]), v("a", &[2.0])]),
            Err(CacheError::DuplicateId(_))
        ));
    }

    #[test]
    fn read_errors_are_distinct() {
        let good = encode_cache(&[v("abc", &[1.0, 2.0, 3.0])]).unwrap();

        let mut bad_magic = good.clone();
        bad_magic[0] = b'X';
        assert!(matches!(decode_cache(&bad_magic), Err(CacheError::BadMagic(_))));
        assert!(matches!(decode_cache(b"WE"), Err(CacheError::Truncated("magic"))));
        assert!(matches!(decode_cache(b"XY"), Err(CacheError::BadMagic(_))));

        let mut bad_version = good.clone();
        bad_version[4] = 2;
        assert!(matches!(decode_cache(&bad_version), Err(CacheError::UnsupportedVersion(2))));

        for cut in [8, 19, 21, 25, good.len() - 1] {
            assert!(
                matches!(decode_cache(&good[..cut]), Err(CacheError::Truncated(_))),
                "cut at {cut}"
            );
        }

        let mut trailing = good.clone();
        trailing.push(0);
        assert!(matches!(decode_cache(&trailing), Err(CacheError::TrailingBytes(1))));

        let mut bad_id = good.clone();
        bad_id[24] = 0xff;
        assert!(matches!(decode_cache(&bad_id), Err(CacheError::InvalidId { index: 0 })));

        let mut huge_count = good;
        huge_count[12..20].copy_from_slice(&u64::MAX.to_le_bytes());
        assert!(matches!(decode_cache(&huge_count), Err(CacheError::Truncated(_))));
    }

    #[test]
    fn file_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.wemb");
        let vs = vec![v("x", &[0.1, f32::MIN_POSITIVE]), v("y", &[-0.0, 3.5])];
        write_cache(&vs, &path).unwrap();
        let back = read_cache(&path).unwrap();
        assert_eq!(back.len(), 2);
        for (a, b) in vs.iter().zip(&back) {
            assert_eq!(a.id, b.id);
            let bits = |v: &[f32]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
            assert_eq!(bits(&a.values), bits(&b.values));
        }
        assert!(matches!(
            read_cache(&dir.path().join("missing")),
            Err(CacheError::Io { .. })
        ));
    }
}
