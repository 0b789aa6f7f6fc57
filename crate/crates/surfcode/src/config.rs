//! JSON lattice configuration and report envelopes.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::lattice::{Boundary, FieldMask, HoleSpec, HoledLattice, LatticeBuilder, LatticeError, Region};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("reading {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("parsing lattice config: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

fn default_clearance() -> usize {
    1
}

/// A field component assignment on a region of the lattice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub region: Region,
    #[serde(default)]
    pub hx: f64,
    #[serde(default)]
    pub hy: f64,
    #[serde(default)]
    pub hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeConfig {
    pub width: usize,
    pub height: usize,
    #[serde(default)]
    pub boundary: Boundary,
    #[serde(default)]
    pub holes: Vec<HoleSpec>,
    #[serde(default)]
    pub fields: Vec<FieldSpec>,
    /// Minimum number of site rows between a hole and the outer edge.
    #[serde(default = "default_clearance")]
    pub clearance: usize,
}

impl LatticeConfig {
    pub fn from_json(text: &str) -> Result<Self, ConfigError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_json(&text)
    }

    pub fn lattice(&self) -> Result<HoledLattice, ConfigError> {
        Ok(LatticeBuilder::new(self.width, self.height)
            .boundary(self.boundary)
            .holes(self.holes.iter().copied())
            .clearance(self.clearance)
            .build()?)
    }

    /// Sum of all field assignments; overlapping regions add.
    pub fn mask(&self, lat: &HoledLattice) -> Result<FieldMask, ConfigError> {
        let mut mask = FieldMask::zeros(lat);
        for f in &self.fields {
            mask = mask.add(lat, &f.region, [f.hx, f.hy, f.hz])?;
        }
        Ok(mask)
    }
}

/// Hex SHA-256 of the compact JSON form of `value`.
pub fn config_hash<T: Serialize>(value: &T) -> String {
    let bytes = serde_json::to_vec(value).expect("config types serialize");
    hex::encode(Sha256::digest(bytes))
}

/// Every JSON report carries the tool version, the hash of its inputs and
/// the seed.
#[derive(Debug, Clone, Serialize)]
pub struct Report<T: Serialize> {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub config_hash: String,
    pub seed: u64,
    pub units: &'static str,
    pub result: T,
}

pub const UNITS: &str = "energies in units of g, hbar = k_B = 1";

impl<T: Serialize> Report<T> {
    pub fn new<C: Serialize>(command: &str, inputs: &C, seed: u64, result: T) -> Self {
        Report {
            tool: "surfcode",
            version: VERSION,
            command: command.to_string(),
            config_hash: config_hash(inputs),
            seed,
            units: UNITS,
            result,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

/// Comment lines that head every CSV output.
pub fn csv_preamble<C: Serialize>(command: &str, inputs: &C, seed: u64) -> String {
    format!(
        "# surfcode {VERSION} {command}\n# config_hash {}\n# seed {seed}\n# {UNITS}\n",
        config_hash(inputs)
    )
}
