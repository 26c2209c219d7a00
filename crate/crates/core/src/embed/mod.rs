//! Feature extraction: model loading, tensor embedding, batch corpus driver.

pub mod builtin;
pub mod cache;
mod descriptor;
#[cfg(feature = "onnx")]
mod graph;

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::data::{CorpusManifest, ManifestEntry};
use crate::preprocess::{normalize, resize_bilinear, InputTensor, PreprocessError};
use crate::render::{render, LanguageProfile, ProfileRegistry, RenderConfig, RenderError};

pub use self::cache::{read_cache, write_cache, CacheError};
pub use self::descriptor::{BackendKind, ModelDescriptor};

/// Inference batch size used unless the graph pins its own.
pub const DEFAULT_BATCH_SIZE: usize = 16;

#[derive(Debug, Error)]
pub enum EmbedError {
    #[error("cannot read model descriptor {path}: {source}")]
    DescriptorIo {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot parse model descriptor {path}: {source}")]
    DescriptorParse {
        path: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("invalid model descriptor: {0}")]
    InvalidDescriptor(String),
    #[error("graph file not found: {0}")]
    GraphNotFound(String),
    #[error("failed to load graph {path}: {message}")]
    GraphLoad { path: String, message: String },
    #[error("{what} shape mismatch: descriptor expects {expected}, found {actual}")]
    ShapeMismatch {
        what: String,
        expected: String,
        actual: String,
    },
    #[error("graph-file backend unavailable: built without the `onnx` feature")]
    BackendUnavailable,
    #[error("input tensor is {actual_h}x{actual_w}, model expects {expected_h}x{expected_w}")]
    TensorDimensions {
        expected_h: usize,
        expected_w: usize,
        actual_h: usize,
        actual_w: usize,
    },
    #[error("inference failed: {0}")]
    Inference(String),
    #[error("rayon pool: {0}")]
    ThreadPool(String),
}

/// Why one snippet could not be embedded.
#[derive(Debug, Error)]
pub enum ItemError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path} is not valid UTF-8")]
    Utf8 { path: String },
    #[error(transparent)]
    Profile(#[from] crate::render::ProfileError),
    #[error(transparent)]
    Render(#[from] RenderError),
    #[error(transparent)]
    Preprocess(#[from] PreprocessError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// One snippet's embedding.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingVector {
    pub id: String,
    pub values: Vec<f32>,
}

#[derive(Debug)]
enum Backend {
    PatchMean,
    #[cfg(feature = "onnx")]
    Graph(graph::GraphRunner),
}

/// A loaded feature extractor. Read-only after construction and shareable across threads.
#[derive(Debug)]
pub struct EmbeddingModel {
    descriptor: ModelDescriptor,
    backend: Backend,
    batch_size: usize,
}

/// Loads the descriptor at `path` and the graph it points to.
pub fn load_model(path: &Path) -> Result<EmbeddingModel, EmbedError> {
    EmbeddingModel::from_descriptor(ModelDescriptor::from_file(path)?)
}

impl EmbeddingModel {
    /// The patch-mean extractor with its default descriptor.
    pub fn builtin() -> Self {
        Self::from_descriptor(ModelDescriptor::builtin()).expect("builtin descriptor is valid")
    }

    pub fn from_descriptor(descriptor: ModelDescriptor) -> Result<Self, EmbedError> {
        descriptor.validate()?;
        match descriptor.backend {
            BackendKind::BuiltinPatchMean => {
                let grid = builtin::PATCH_GRID;
                if descriptor.input_width % grid != 0 || descriptor.input_height % grid != 0 {
                    return Err(EmbedError::ShapeMismatch {
                        what: "patch-mean input".into(),
                        expected: format!("dimensions divisible by {grid}"),
                        actual: format!("{}x{}", descriptor.input_width, descriptor.input_height),
                    });
                }
                if descriptor.embedding_dim != builtin::PATCH_MEAN_DIM {
                    return Err(EmbedError::ShapeMismatch {
                        what: "patch-mean output".into(),
                        expected: descriptor.embedding_dim.to_string(),
                        actual: builtin::PATCH_MEAN_DIM.to_string(),
                    });
                }
                Ok(EmbeddingModel {
                    descriptor,
                    backend: Backend::PatchMean,
                    batch_size: DEFAULT_BATCH_SIZE,
                })
            }
            BackendKind::GraphFile => Self::load_graph(descriptor),
        }
    }

    #[cfg(feature = "onnx")]
    fn load_graph(descriptor: ModelDescriptor) -> Result<Self, EmbedError> {
        let path = descriptor
            .graph_path
            .clone()
            .expect("validated: graph-file has a path");
        let runner = graph::GraphRunner::load(&path, &descriptor)?;
        Ok(EmbeddingModel {
            batch_size: runner.batch_size(),
            descriptor,
            backend: Backend::Graph(runner),
        })
    }

    #[cfg(not(feature = "onnx"))]
    fn load_graph(_descriptor: ModelDescriptor) -> Result<Self, EmbedError> {
        Err(EmbedError::BackendUnavailable)
    }

    /// Overrides the inference batch size for the patch-mean backend, or for
    /// graphs whose batch axis is symbolic (the plan is recompiled).
    pub fn with_batch_size(self, batch_size: usize) -> Result<Self, EmbedError> {
        if batch_size == 0 {
            return Err(EmbedError::InvalidDescriptor("batch size must be positive".into()));
        }
        match self.backend {
            Backend::PatchMean => Ok(EmbeddingModel {
                batch_size,
                ..self
            }),
            #[cfg(feature = "onnx")]
            Backend::Graph(_) => {
                let path = self.descriptor.graph_path.clone().expect("graph-file has a path");
                let runner = graph::GraphRunner::load_with_batch(&path, &self.descriptor, batch_size)?;
                Ok(EmbeddingModel {
                    batch_size: runner.batch_size(),
                    descriptor: self.descriptor,
                    backend: Backend::Graph(runner),
                })
            }
        }
    }

    pub fn descriptor(&self) -> &ModelDescriptor {
        &self.descriptor
    }

    pub fn dim(&self) -> usize {
        self.descriptor.embedding_dim
    }

    pub fn batch_size(&self) -> usize {
        self.batch_size
    }

    fn check(&self, tensor: &InputTensor) -> Result<(), EmbedError> {
        let (h, w) = (self.descriptor.input_height, self.descriptor.input_width);
        if tensor.height() != h || tensor.width() != w {
            return Err(EmbedError::TensorDimensions {
                expected_h: h,
                expected_w: w,
                actual_h: tensor.height(),
                actual_w: tensor.width(),
            });
        }
        Ok(())
    }

    /// Embeds a single tensor.
    pub fn embed(&self, tensor: &InputTensor) -> Result<Vec<f64>, EmbedError> {
        let mut out = self.embed_batch(std::slice::from_ref(tensor))?;
        Ok(out.pop().expect("one output per input"))
    }

    /// Embeds tensors in fixed-size batches; the last batch is zero-padded
    /// and the padding rows dropped.
    pub fn embed_batch(&self, tensors: &[InputTensor]) -> Result<Vec<Vec<f64>>, EmbedError> {
        for t in tensors {
            self.check(t)?;
        }
        match &self.backend {
            Backend::PatchMean => Ok(tensors.iter().map(builtin::patch_mean).collect()),
            #[cfg(feature = "onnx")]
            Backend::Graph(runner) => {
                let per_item = 3 * self.descriptor.input_height * self.descriptor.input_width;
                let mut out = Vec::with_capacity(tensors.len());
                for chunk in tensors.chunks(self.batch_size) {
                    let mut flat = Vec::with_capacity(self.batch_size * per_item);
                    for t in chunk {
                        flat.extend(t.values().iter().map(|&v| v as f32));
                    }
                    flat.resize(self.batch_size * per_item, 0.0);
                    let rows = runner.run(flat)?;
                    out.extend(rows.into_iter().take(chunk.len()));
                }
                if let Some(bad) = out.iter().flatten().find(|v| !v.is_finite()) {
                    return Err(EmbedError::Inference(format!("non-finite output {bad}")));
                }
                Ok(out)
            }
        }
    }

    /// Render, resize to the model input, normalize.
    pub fn prepare(
        &self,
        source: &str,
        profile: &LanguageProfile,
        config: &RenderConfig,
    ) -> Result<InputTensor, ItemError> {
        let d = &self.descriptor;
        let image = render(source, profile, config)?;
        let resized = resize_bilinear(&image, d.input_width as u32, d.input_height as u32)?;
        Ok(normalize(&resized, d.mean, d.std)?)
    }

    /// Full pipeline for one snippet.
    pub fn embed_source(
        &self,
        source: &str,
        profile: &LanguageProfile,
        config: &RenderConfig,
    ) -> Result<Vec<f64>, ItemError> {
        Ok(self.embed(&self.prepare(source, profile, config)?)?)
    }
}

/// A snippet that failed somewhere in the pipeline.
#[derive(Debug)]
pub struct ItemFailure {
    pub id: String,
    pub error: ItemError,
}

/// Output of [`embed_corpus`]: vectors sorted by id plus per-snippet failures.
#[derive(Debug, Default)]
pub struct CorpusEmbedding {
    pub vectors: Vec<EmbeddingVector>,
    pub failures: Vec<ItemFailure>,
}

fn load_source(entry: &ManifestEntry) -> Result<String, ItemError> {
    let path = entry.path.display().to_string();
    let bytes = fs::read(&entry.path).map_err(|source| ItemError::Read {
        path: path.clone(),
        source,
    })?;
    String::from_utf8(bytes).map_err(|_| ItemError::Utf8 { path })
}

fn embed_chunk(
    model: &EmbeddingModel,
    chunk: &[ManifestEntry],
    profiles: &ProfileRegistry,
    config: &RenderConfig,
) -> (Vec<EmbeddingVector>, Vec<ItemFailure>) {
    let mut failures = Vec::new();
    let mut ready = Vec::with_capacity(chunk.len());
    for entry in chunk {
        let tensor = load_source(entry).and_then(|src| {
            let profile = profiles.get(&entry.language)?;
            model.prepare(&src, profile, config)
        });
        match tensor {
            Ok(t) => ready.push((entry.id.clone(), t)),
            Err(error) => failures.push(ItemFailure {
                id: entry.id.clone(),
                error,
            }),
        }
    }
    let tensors: Vec<InputTensor> = ready.iter().map(|(_, t)| t.clone()).collect();
    match model.embed_batch(&tensors) {
        Ok(rows) => {
            let vectors = ready
                .into_iter()
                .zip(rows)
                .map(|((id, _), row)| EmbeddingVector {
                    id,
                    values: row.into_iter().map(|v| v as f32).collect(),
                })
                .collect();
            (vectors, failures)
        }
        Err(e) => {
            let msg = e.to_string();
            failures.extend(ready.into_iter().map(|(id, _)| ItemFailure {
                id,
                error: ItemError::Embed(EmbedError::Inference(msg.clone())),
            }));
            (Vec::new(), failures)
        }
    }
}

/// Runs render, preprocess and embed over every manifest entry on a pool of
/// `workers` threads. The result does not depend on `workers`.
pub fn embed_corpus(
    model: &EmbeddingModel,
    manifest: &CorpusManifest,
    profiles: &ProfileRegistry,
    config: &RenderConfig,
    workers: usize,
) -> Result<CorpusEmbedding, EmbedError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| EmbedError::ThreadPool(e.to_string()))?;
    let parts: Vec<_> = pool.install(|| {
        manifest
            .entries
            .par_chunks(model.batch_size())
            .map(|chunk| embed_chunk(model, chunk, profiles, config))
            .collect()
    });
    let mut out = CorpusEmbedding::default();
    for (vectors, failures) in parts {
        out.vectors.extend(vectors);
        out.failures.extend(failures);
    }
    out.vectors.sort_by(|a, b| a.id.cmp(&b.id));
    out.failures.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(out)
}
