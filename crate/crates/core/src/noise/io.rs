//! Series file formats.
//!
//! CSV: header `index,value` then one row per sample.
//!
//! FNS1 binary (little-endian): magic `FNS1`, `u32` length, `u8` kind
//! (0 = fgn, 1 = fbm, 2 = stable), `f64` parameter (H or alpha), `f64`
//! step, then `length` `f64` values.

use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAGIC: &[u8; 4] = b"FNS1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SeriesKind {
    Fgn,
    Fbm,
    Stable,
}

impl SeriesKind {
    fn flag(self) -> u8 {
        match self {
            SeriesKind::Fgn => 0,
            SeriesKind::Fbm => 1,
            SeriesKind::Stable => 2,
        }
    }

    fn from_flag(flag: u8) -> Result<Self> {
        match flag {
            0 => Ok(SeriesKind::Fgn),
            1 => Ok(SeriesKind::Fbm),
            2 => Ok(SeriesKind::Stable),
            other => Err(Error::Format(format!("unknown series flag {other}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesFormat {
    Csv,
    Fns,
}

impl SeriesFormat {
    /// `.csv` maps to CSV, anything else to FNS1.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => SeriesFormat::Csv,
            _ => SeriesFormat::Fns,
        }
    }
}

/// A series as stored on disk. CSV files carry no header metadata, so
/// `kind`, `param` and `step_dt` are `None` after reading CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesFile {
    pub kind: Option<SeriesKind>,
    pub param: Option<f64>,
    pub step_dt: Option<f64>,
    pub values: Vec<f64>,
}

impl SeriesFile {
    pub fn new(kind: SeriesKind, param: f64, step_dt: f64, values: Vec<f64>) -> Self {
        Self {
            kind: Some(kind),
            param: Some(param),
            step_dt: Some(step_dt),
            values,
        }
    }

    pub fn to_fns_bytes(&self) -> Result<Vec<u8>> {
        let len = u32::try_from(self.values.len())
            .map_err(|_| Error::Format("series longer than u32::MAX".into()))?;
        let mut out = Vec::with_capacity(25 + 8 * self.values.len());
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&len.to_le_bytes());
        out.push(self.kind.unwrap_or(SeriesKind::Fgn).flag());
        out.extend_from_slice(&self.param.unwrap_or(f64::NAN).to_le_bytes());
        out.extend_from_slice(&self.step_dt.unwrap_or(1.0).to_le_bytes());
        for v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        Ok(out)
    }

    pub fn from_fns_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 25 || &bytes[..4] != MAGIC {
            return Err(Error::Format("missing FNS1 header".into()));
        }
        let len = u32::from_le_bytes(bytes[4..8].try_into().unwrap()) as usize;
        let kind = SeriesKind::from_flag(bytes[8])?;
        let param = f64::from_le_bytes(bytes[9..17].try_into().unwrap());
        let step_dt = f64::from_le_bytes(bytes[17..25].try_into().unwrap());
        let body = &bytes[25..];
        if body.len() != 8 * len {
            return Err(Error::Format(format!(
                "FNS1 declares {len} values but carries {} bytes",
                body.len()
            )));
        }
        let values = body
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(Self::new(kind, param, step_dt, values))
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "index,value")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(w, "{i},{v:?}")?;
        }
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut lines = BufReader::new(r).lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty CSV".into()))??;
        if header.trim() != "index,value" {
            return Err(Error::Format(format!("unexpected CSV header `{header}`")));
        }
        let mut values = Vec::new();
        for (row, line) in lines.enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let (idx, val) = line
                .split_once(',')
                .ok_or_else(|| Error::Format(format!("row {row}: expected two columns")))?;
            let idx: usize = idx
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("row {row}: bad index `{idx}`")))?;
            if idx != values.len() {
                return Err(Error::Format(format!("row {row}: index {idx} out of sequence")));
            }
            let val: f64 = val
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("row {row}: bad value `{val}`")))?;
            values.push(val);
        }
        Ok(Self {
            kind: None,
            param: None,
            step_dt: None,
            values,
        })
    }
}

pub fn write_series(path: &Path, series: &SeriesFile) -> Result<()> {
    match SeriesFormat::from_path(path) {
        SeriesFormat::Fns => fs::write(path, series.to_fns_bytes()?)?,
        SeriesFormat::Csv => {
            let f = BufWriter::new(fs::File::create(path)?);
            series.write_csv(f)?;
        }
    }
    Ok(())
}

pub fn read_series(path: &Path) -> Result<SeriesFile> {
    match SeriesFormat::from_path(path) {
        SeriesFormat::Fns => SeriesFile::from_fns_bytes(&fs::read(path)?),
        SeriesFormat::Csv => SeriesFile::read_csv(fs::File::open(path)?),
    }
}
