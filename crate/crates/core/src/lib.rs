//! Source code as images: render snippets with a bitmap font, embed the
//! pictures with an image feature extractor, and use the embeddings for
//! clone detection and kNN classification.

pub mod cli;
pub mod data;
pub mod embed;
pub mod preprocess;
pub mod render;
pub mod report;
pub mod tasks;

pub use data::{load_manifest, load_pairs, ClonePairList, CorpusManifest, ManifestEntry};
pub use embed::{embed_corpus, load_model, EmbeddingModel, EmbeddingVector, ModelDescriptor};
pub use preprocess::{normalize, resize_bilinear, InputTensor};
pub use render::{render, LanguageProfile, RasterImage, RenderConfig, Variant};
pub use report::RunReport;
pub use tasks::{calibrate_threshold, cosine_similarity, detect_clone, knn_classify, Metrics, NeighborIndex};
