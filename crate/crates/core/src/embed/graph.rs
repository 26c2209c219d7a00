//! ONNX graph backend.

use std::path::Path;

use tract_onnx::prelude::*;
use tract_onnx::tract_hir::infer::Factoid;

use super::{EmbedError, ModelDescriptor, DEFAULT_BATCH_SIZE};

/// An optimized ONNX plan compiled for a fixed `(batch, 3, H, W)` input.
pub(crate) struct GraphRunner {
    plan: Arc<TypedRunnableModel>,
    batch: usize,
    height: usize,
    width: usize,
    dim: usize,
}

impl std::fmt::Debug for GraphRunner {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GraphRunner")
            .field("batch", &self.batch)
            .field("input", &(3, self.height, self.width))
            .field("dim", &self.dim)
            .finish()
    }
}

fn shape_error(what: &str, expected: String, actual: String) -> EmbedError {
    EmbedError::ShapeMismatch {
        what: what.to_string(),
        expected,
        actual,
    }
}

fn graph_error(path: &Path, e: impl std::fmt::Display) -> EmbedError {
    EmbedError::GraphLoad {
        path: path.display().to_string(),
        message: format!("{e:#}"),
    }
}

impl GraphRunner {
    pub(crate) fn load(path: &Path, descriptor: &ModelDescriptor) -> Result<Self, EmbedError> {
        Self::load_inner(path, descriptor, None)
    }

    pub(crate) fn load_with_batch(
        path: &Path,
        descriptor: &ModelDescriptor,
        batch: usize,
    ) -> Result<Self, EmbedError> {
        Self::load_inner(path, descriptor, Some(batch))
    }

    fn load_inner(
        path: &Path,
        descriptor: &ModelDescriptor,
        requested_batch: Option<usize>,
    ) -> Result<Self, EmbedError> {
        if !path.is_file() {
            return Err(EmbedError::GraphNotFound(path.display().to_string()));
        }
        let mut model = tract_onnx::onnx()
            .model_for_path(path)
            .map_err(|e| graph_error(path, e))?;

        if model.inputs.len() != 1 || model.outputs.len() != 1 {
            return Err(shape_error(
                "graph inputs/outputs",
                "1 input, 1 output".into(),
                format!("{} inputs, {} outputs", model.inputs.len(), model.outputs.len()),
            ));
        }

        let (h, w, dim) = (
            descriptor.input_height,
            descriptor.input_width,
            descriptor.embedding_dim,
        );
        let declared = model
            .input_fact(0)
            .map_err(|e| graph_error(path, e))?
            .clone();
        let expected_input = format!("(batch, 3, {h}, {w})");
        let mut batch = requested_batch.unwrap_or(DEFAULT_BATCH_SIZE);
        if let Some(rank) = declared.shape.rank().concretize() {
            if rank != 4 {
                return Err(shape_error("graph input", expected_input, format!("{:?}", declared.shape)));
            }
        }
        for (axis, want) in [(1usize, 3usize), (2, h), (3, w)] {
            let got = declared
                .shape
                .dim(axis)
                .and_then(|d| d.concretize())
                .and_then(|d| d.as_i64());
            if let Some(got) = got {
                if got != want as i64 {
                    return Err(shape_error("graph input", expected_input, format!("{:?}", declared.shape)));
                }
            }
        }
        if let Some(b) = declared
            .shape
            .dim(0)
            .and_then(|d| d.concretize())
            .and_then(|d| d.as_i64())
        {
            let pinned = usize::try_from(b).ok().filter(|&b| b > 0).ok_or_else(|| {
                shape_error("graph input batch", "positive".into(), b.to_string())
            })?;
            if requested_batch.is_some_and(|r| r != pinned) {
                return Err(shape_error(
                    "graph input batch",
                    batch.to_string(),
                    pinned.to_string(),
                ));
            }
            batch = pinned;
        }

        model
            .set_input_fact(0, f32::fact([batch, 3, h, w]).into())
            .map_err(|e| graph_error(path, e))?;
        let typed = model.into_typed().map_err(|e| graph_error(path, e))?;
        let out = typed.output_fact(0).map_err(|e| graph_error(path, e))?;
        let out_shape: Option<Vec<usize>> = out.shape.as_concrete().map(|s| s.to_vec());
        match out_shape.as_deref() {
            Some([b, d]) if *b == batch && *d == dim => {}
            _ => {
                return Err(shape_error(
                    "graph output",
                    format!("({batch}, {dim})"),
                    format!("{:?}", out.shape),
                ))
            }
        }
        if out.datum_type != f32::datum_type() {
            return Err(shape_error(
                "graph output type",
                "f32".into(),
                format!("{:?}", out.datum_type),
            ));
        }
        let plan = typed
            .into_optimized()
            .and_then(|m| m.into_runnable())
            .map_err(|e| graph_error(path, e))?;
        Ok(GraphRunner {
            plan,
            batch,
            height: h,
            width: w,
            dim,
        })
    }

    pub(crate) fn batch_size(&self) -> usize {
        self.batch
    }

    /// Runs one full batch; `flat` holds exactly `batch * 3 * H * W` values.
    pub(crate) fn run(&self, flat: Vec<f32>) -> Result<Vec<Vec<f64>>, EmbedError> {
        let input = Tensor::from_shape(&[self.batch, 3, self.height, self.width], &flat)
            .map_err(|e| EmbedError::Inference(format!("{e:#}")))?;
        let outputs = self
            .plan
            .run(tvec!(input.into_tvalue()))
            .map_err(|e| EmbedError::Inference(format!("{e:#}")))?;
        let view = outputs[0]
            .to_plain_array_view::<f32>()
            .map_err(|e| EmbedError::Inference(format!("{e:#}")))?;
        let rows = view
            .outer_iter()
            .map(|row| row.iter().map(|&v| v as f64).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        debug_assert!(rows.iter().all(|r| r.len() == self.dim));
        Ok(rows)
    }
}
