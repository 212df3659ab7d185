//! On-disk trace format: a JSON sidecar holding metadata and the loss curve,
//! next to an `SGN1` binary matrix (`"SGN1"`, `u32` steps, `u32` dim, then
//! row-major little-endian `f64`).

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::trainer::{SgnTrace, TraceMeta};
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAGIC: &[u8; 4] = b"SGN1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceSidecar {
    pub steps: usize,
    pub dim: usize,
    pub matrix_file: String,
    pub meta: TraceMeta,
    pub loss_curve: Vec<f64>,
}

pub fn matrix_to_sgn_bytes<T: Real>(steps: usize, dim: usize, values: &[T]) -> Result<Vec<u8>> {
    let s = u32::try_from(steps).map_err(|_| Error::Format("steps exceed u32".into()))?;
    let d = u32::try_from(dim).map_err(|_| Error::Format("dim exceeds u32".into()))?;
    if values.len() != steps * dim {
        return Err(Error::Format(format!(
            "matrix has {} values, expected {steps} x {dim}",
            values.len()
        )));
    }
    let mut out = Vec::with_capacity(12 + 8 * values.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&s.to_le_bytes());
    out.extend_from_slice(&d.to_le_bytes());
    for v in values {
        out.extend_from_slice(&v.as_f64().to_le_bytes());
    }
    Ok(out)
}

pub fn matrix_from_sgn_bytes(bytes: &[u8]) -> Result<(usize, usize, Vec<f64>)> {
    if bytes.len() < 12 || &bytes[..4] != MAGIC {
        return Err(Error::Format("missing SGN1 header".into()));
    }
    let steps = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
    let dim = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    let body = &bytes[12..];
    if body.len() != 8 * steps * dim {
        return Err(Error::Format(format!(
            "SGN1 declares {steps} x {dim} values but carries {} bytes",
            body.len()
        )));
    }
    let values = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok((steps, dim, values))
}

/// Writes `<stem>.json` and `<stem>.sgn`; returns both paths.
pub fn write_trace<T: Real>(trace: &SgnTrace<T>, stem: &Path) -> Result<(PathBuf, PathBuf)> {
    let json_path = stem.with_extension("json");
    let bin_path = stem.with_extension("sgn");
    let sidecar = TraceSidecar {
        steps: trace.steps,
        dim: trace.dim,
        matrix_file: bin_path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default(),
        meta: trace.meta.clone(),
        loss_curve: trace.loss_curve.iter().map(|v| v.as_f64()).collect(),
    };
    fs::write(&bin_path, matrix_to_sgn_bytes(trace.steps, trace.dim, &trace.noise_vectors)?)?;
    fs::write(&json_path, serde_json::to_vec_pretty(&sidecar)?)?;
    Ok((json_path, bin_path))
}

/// Reads a trace from its JSON sidecar; the matrix file is resolved next to it.
pub fn read_trace(sidecar_path: &Path) -> Result<SgnTrace<f64>> {
    let sidecar: TraceSidecar = serde_json::from_slice(&fs::read(sidecar_path)?)
        .map_err(|e| Error::Format(format!("trace sidecar: {e}")))?;
    let dir = sidecar_path.parent().unwrap_or(Path::new("."));
    let (steps, dim, values) = matrix_from_sgn_bytes(&fs::read(dir.join(&sidecar.matrix_file))?)?;
    if steps != sidecar.steps || dim != sidecar.dim {
        return Err(Error::Format(format!(
            "sidecar says {} x {}, matrix is {steps} x {dim}",
            sidecar.steps, sidecar.dim
        )));
    }
    if sidecar.loss_curve.len() != steps {
        return Err(Error::Format("loss curve length differs from step count".into()));
    }
    Ok(SgnTrace {
        steps,
        dim,
        noise_vectors: values,
        loss_curve: sidecar.loss_curve,
        meta: sidecar.meta,
    })
}
