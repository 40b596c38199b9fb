use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gen::{GenConfig, GeneratedFamily};
use crate::qlinalg::{QMatrix, QVector};
use crate::tolerance::Tolerances;

/// Current on-disk format version.
pub const FORMAT_VERSION: &str = "1";

/// Optional per-file tolerance overrides; absent fields keep the defaults.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct ToleranceOverrides {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub eq: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rank: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub spec: Option<f64>,
}

impl ToleranceOverrides {
    pub fn apply(&self, base: Tolerances) -> Tolerances {
        Tolerances {
            eq: self.eq.unwrap_or(base.eq),
            rank: self.rank.unwrap_or(base.rank),
            spec: self.spec.unwrap_or(base.spec),
        }
    }
}

/// A vector family on disk: JSON with an explicit format version, the
/// ambient dimension, the vectors as lists of component 4-arrays, and
/// optionally the generating configuration and operator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyFile {
    pub version: String,
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub tolerances: Option<ToleranceOverrides>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gen: Option<GenConfig>,
    pub vectors: Vec<QVector>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub operator: Option<QMatrix>,
}

impl FamilyFile {
    /// Structural validation beyond what deserialization enforces.
    pub fn validate(&self) -> Result<()> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported format version {:?}, expected {FORMAT_VERSION:?}",
                self.version
            )));
        }
        if self.vectors.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for (i, v) in self.vectors.iter().enumerate() {
            if v.dim() != self.dim {
                return Err(Error::DimensionMismatch(format!(
                    "vector {i} has dim {}, file declares {}",
                    v.dim(),
                    self.dim
                )));
            }
        }
        if let Some(op) = &self.operator {
            if op.rows() != self.dim || op.cols() != self.dim {
                return Err(Error::DimensionMismatch(format!(
                    "operator is {}x{}, file declares dim {}",
                    op.rows(),
                    op.cols(),
                    self.dim
                )));
            }
        }
        Ok(())
    }

    /// Tolerances for this file on top of the given base.
    pub fn effective_tolerances(&self, base: Tolerances) -> Tolerances {
        match &self.tolerances {
            Some(overrides) => overrides.apply(base),
            None => base,
        }
    }

    /// The single vector of a signal file.
    pub fn signal_vector(&self) -> Result<QVector> {
        if self.vectors.len() != 1 {
            return Err(Error::InvalidInput(format!(
                "a signal file must contain exactly one vector, found {}",
                self.vectors.len()
            )));
        }
        Ok(self.vectors[0].clone())
    }
}

/// Canonical serialization: pretty JSON with a trailing newline. Writing the
/// parse of a canonical file reproduces it byte for byte.
pub fn canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

pub fn parse_family(text: &str) -> Result<FamilyFile> {
    let file: FamilyFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.validate()?;
    Ok(file)
}

pub fn read_family(path: &Path) -> Result<FamilyFile> {
    parse_family(&fs::read_to_string(path)?)
}

pub fn write_family(path: &Path, file: &FamilyFile) -> Result<()> {
    fs::write(path, canonical_json(file))?;
    Ok(())
}

/// Packages a generated family for storage, provenance included.
pub fn family_to_file(fam: &GeneratedFamily) -> FamilyFile {
    FamilyFile {
        version: FORMAT_VERSION.to_string(),
        dim: fam.config.dim,
        tolerances: None,
        gen: Some(fam.config),
        vectors: fam.vectors.clone(),
        operator: fam.operator.clone(),
    }
}
