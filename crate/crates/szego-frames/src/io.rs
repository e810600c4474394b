//! Serialization schemas and artifact plumbing.
//!
//! Wire formats, shared by every subcommand and stable across releases:
//!
//! - function: `{"coeffs": [[re, im], ...]}`
//! - coefficient family: `{"K": K, "blocks": [[[re, im], ...], ...]}`
//! - decomposition: the family plus `residual_rel`, `mixed_norm`,
//!   `iterations`, `prefix_residuals`, and the `rings`/`truncation`
//!   needed to rebuild the synthesis system.
//!
//! Complex values are `[re, im]` pairs. CSV floats are printed with 17
//! significant digits, `.` decimal point, no locale. Every emitted
//! artifact is accompanied by a run manifest (a sibling
//! `<name>.manifest.json`) so the data payload itself stays byte-stable
//! for identical seeds and flags.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::time::{SystemTime, UNIX_EPOCH};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::frame::MixedCoefficients;
use crate::hardy::HardyFunction;

// --- function JSON ---------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FunctionRepr {
    coeffs: Vec<[f64; 2]>,
}

impl Serialize for HardyFunction {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        FunctionRepr {
            coeffs: self.coeffs().iter().map(|c| [c.re, c.im]).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HardyFunction {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = FunctionRepr::deserialize(deserializer)?;
        let coeffs = repr
            .coeffs
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        HardyFunction::new(coeffs).map_err(D::Error::custom)
    }
}

// --- coefficient-family JSON ------------------------------------------

#[derive(Serialize, Deserialize)]
struct MixedRepr {
    #[serde(rename = "K")]
    rings: usize,
    blocks: Vec<Vec<[f64; 2]>>,
}

impl Serialize for MixedCoefficients {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MixedRepr {
            rings: self.rings(),
            blocks: self
                .blocks()
                .map(|b| b.iter().map(|c| [c.re, c.im]).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MixedCoefficients {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = MixedRepr::deserialize(deserializer)?;
        if repr.blocks.len() != repr.rings {
            return Err(D::Error::custom(format!(
                "family declares K = {} but carries {} blocks",
                repr.rings,
                repr.blocks.len()
            )));
        }
        let blocks = repr
            .blocks
            .iter()
            .map(|b| b.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        MixedCoefficients::new(blocks).map_err(D::Error::custom)
    }
}

// --- decomposition artifact -------------------------------------------

/// On-disk decomposition: everything needed to report on and reconstruct
/// the represented function.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DecompositionArtifact {
    /// Ring truncation the coefficients live on.
    pub rings: usize,
    /// Taylor truncation used when the system was built.
    pub truncation: usize,
    /// The coefficients themselves.
    pub x: MixedCoefficients,
    /// Relative residual of the synthesis partial sum.
    pub residual_rel: f64,
    /// `‖x‖_{1,2}`.
    pub mixed_norm: f64,
    /// Solver iterations consumed.
    pub iterations: usize,
    /// Relative residual after each ring prefix.
    pub prefix_residuals: Vec<f64>,
}

// --- run manifest ------------------------------------------------------

/// Reproducibility record accompanying every emitted artifact.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunManifest {
    /// Subcommand that produced the artifact.
    pub command: String,
    /// Flag values, sorted by name.
    pub parameters: BTreeMap<String, String>,
    /// Seed used for any randomness (0 when none).
    pub seed: u64,
    /// Crate version.
    pub tool_version: String,
    /// Unix seconds at emission; honors `SOURCE_DATE_EPOCH` when set.
    pub timestamp: String,
}

impl RunManifest {
    /// Stamps a manifest for `command` with the given flag map.
    pub fn new(command: &str, parameters: BTreeMap<String, String>, seed: u64) -> Self {
        let timestamp = std::env::var("SOURCE_DATE_EPOCH").unwrap_or_else(|_| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs().to_string())
                .unwrap_or_else(|_| "0".to_string())
        });
        RunManifest {
            command: command.to_string(),
            parameters,
            seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp,
        }
    }
}

// --- file plumbing -----------------------------------------------------

/// Reads a whole input; `-` means standard input.
pub fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|source| Error::Io {
                path: "<stdin>".to_string(),
                source,
            })?;
        return Ok(buf);
    }
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_string(),
        source,
    })
}

/// Writes a whole artifact; `-` means standard output.
pub fn write_output(path: &str, data: &str) -> Result<()> {
    if path == "-" {
        let mut stdout = std::io::stdout().lock();
        stdout
            .write_all(data.as_bytes())
            .map_err(|source| Error::Io {
                path: "<stdout>".to_string(),
                source,
            })?;
        return Ok(());
    }
    std::fs::write(path, data).map_err(|source| Error::Io {
        path: path.to_string(),
        source,
    })
}

/// Writes the sibling manifest for an artifact at `path`; skipped (with a
/// stderr note) when the artifact went to standard output.
pub fn write_manifest(path: &str, manifest: &RunManifest) -> Result<()> {
    let json = serde_json::to_string_pretty(manifest)?;
    if path == "-" {
        eprintln!("manifest: {json}");
        return Ok(());
    }
    let manifest_path = format!("{path}.manifest.json");
    write_output(&manifest_path, &json)
}

/// CSV float format: 17 significant digits, `.` decimal, no locale.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}
