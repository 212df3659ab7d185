use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;

pub const MANIFEST_FILE: &str = "manifest.json";

#[derive(Debug, Serialize)]
pub struct FileDigest {
    pub path: PathBuf,
    pub bytes: u64,
    pub sha256: String,
}

impl FileDigest {
    pub fn of(path: &Path) -> std::io::Result<Self> {
        let data = fs::read(path)?;
        let hash = Sha256::digest(&data);
        Ok(Self {
            path: path.to_path_buf(),
            bytes: data.len() as u64,
            sha256: hash.iter().map(|b| format!("{b:02x}")).collect(),
        })
    }
}

#[derive(Debug, Serialize)]
pub struct Manifest<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: &'a ExperimentConfig,
    pub inputs: Vec<FileDigest>,
    pub outputs: Vec<FileDigest>,
}

pub fn write_manifest(
    config: &ExperimentConfig,
    inputs: &[PathBuf],
    outputs: &[PathBuf],
) -> std::io::Result<PathBuf> {
    let digest = |paths: &[PathBuf]| paths.iter().map(|p| FileDigest::of(p)).collect::<std::io::Result<Vec<_>>>();
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config,
        inputs: digest(inputs)?,
        outputs: digest(outputs)?,
    };
    let path = config.out_dir.join(MANIFEST_FILE);
    fs::write(&path, serde_json::to_vec_pretty(&manifest).map_err(std::io::Error::other)?)?;
    Ok(path)
}
