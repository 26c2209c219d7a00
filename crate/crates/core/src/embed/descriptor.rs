use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::EmbedError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BackendKind {
    GraphFile,
    BuiltinPatchMean,
}

/// Binds a feature extractor to its input shape and normalization constants.
///
/// Unknown fields are ignored so exporters can record extra provenance
/// (backbone name, tap point) alongside the required ones.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelDescriptor {
    pub backend: BackendKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph_path: Option<PathBuf>,
    pub input_width: usize,
    pub input_height: usize,
    pub mean: [f64; 3],
    pub std: [f64; 3],
    pub embedding_dim: usize,
    /// Tensor layout; only `channel-major` is supported.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub layout: Option<String>,
}

impl ModelDescriptor {
    /// Descriptor of the patch-mean extractor at the default 224x224 input.
    pub fn builtin() -> Self {
        ModelDescriptor {
            backend: BackendKind::BuiltinPatchMean,
            graph_path: None,
            input_width: 224,
            input_height: 224,
            mean: [0.5; 3],
            std: [0.5; 3],
            embedding_dim: super::builtin::PATCH_MEAN_DIM,
            layout: None,
        }
    }

    pub fn validate(&self) -> Result<(), EmbedError> {
        let invalid = |m: &str| Err(EmbedError::InvalidDescriptor(m.to_string()));
        if self.embedding_dim == 0 {
            return invalid("embedding_dim must be positive");
        }
        if self.input_width == 0 || self.input_height == 0 {
            return invalid("input_width and input_height must be positive");
        }
        if self.mean.iter().chain(self.std.iter()).any(|v| !v.is_finite()) {
            return invalid("mean and std must be finite");
        }
        if self.std.contains(&0.0) {
            return invalid("std components must be nonzero");
        }
        if let Some(layout) = self.layout.as_deref().filter(|l| *l != "channel-major") {
            return invalid(&format!("unsupported layout `{layout}`, expected channel-major"));
        }
        match (self.backend, &self.graph_path) {
            (BackendKind::GraphFile, None) => invalid("graph-file backend requires graph_path"),
            (BackendKind::BuiltinPatchMean, Some(_)) => {
                invalid("graph_path is only valid for the graph-file backend")
            }
            _ => Ok(()),
        }
    }

    /// Reads a JSON descriptor; a relative `graph_path` is resolved against
    /// the descriptor's directory.
    pub fn from_file(path: &Path) -> Result<Self, EmbedError> {
        let text = fs::read_to_string(path).map_err(|source| EmbedError::DescriptorIo {
            path: path.display().to_string(),
            source,
        })?;
        let mut descriptor: ModelDescriptor =
            serde_json::from_str(&text).map_err(|source| EmbedError::DescriptorParse {
                path: path.display().to_string(),
                source,
            })?;
        if let Some(graph) = descriptor.graph_path.as_mut() {
            if graph.is_relative() {
                if let Some(dir) = path.parent() {
                    *graph = dir.join(&*graph);
                }
            }
        }
        descriptor.validate()?;
        Ok(descriptor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_builtin_descriptor() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.json");
        fs::write(
            &path,
            r#"{"backend": "builtin-patch-mean", "input_width": 224, "input_height": 224,
                "mean": [0.5, 0.5, 0.5], "std": [0.5, 0.5, 0.5], "embedding_dim": 192}"#,
        )
        .unwrap();
        assert_eq!(ModelDescriptor::from_file(&path).unwrap(), ModelDescriptor::builtin());
    }

    #[test]
    fn graph_path_resolves_relative_to_descriptor() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("d.json");
        fs::write(
            &path,
            r#"{"backend": "graph-file", "graph_path": "net.onnx", "input_width": 32,
                "input_height": 32, "mean": [0, 0, 0], "std": [1, 1, 1], "embedding_dim": 4}"#,
        )
        .unwrap();
        let d = ModelDescriptor::from_file(&path).unwrap();
        assert_eq!(d.graph_path.unwrap(), dir.path().join("net.onnx"));
    }

    #[test]
    fn distinct_errors() {
        let dir = tempfile::tempdir().unwrap();
        let missing = dir.path().join("nope.json");
        assert!(matches!(
            ModelDescriptor::from_file(&missing),
            Err(EmbedError::DescriptorIo { .. })
        ));

        let broken = dir.path().join("broken.json");
        fs::write(&broken, "{ not json").unwrap();
        assert!(matches!(
            ModelDescriptor::from_file(&broken),
            Err(EmbedError::DescriptorParse { .. })
        ));

        let mut d = ModelDescriptor::builtin();
        d.embedding_dim = 0;
        assert!(matches!(d.validate(), Err(EmbedError::InvalidDescriptor(_))));
        let mut d = ModelDescriptor::builtin();
        d.backend = BackendKind::GraphFile;
        assert!(d.validate().is_err());
        let mut d = ModelDescriptor::builtin();
        d.graph_path = Some("x.onnx".into());
        assert!(d.validate().is_err());
        let mut d = ModelDescriptor::builtin();
        d.std[2] = 0.0;
        assert!(d.validate().is_err());
        let mut d = ModelDescriptor::builtin();
        d.layout = Some("channels-last".into());
        assert!(d.validate().is_err());
    }
}
