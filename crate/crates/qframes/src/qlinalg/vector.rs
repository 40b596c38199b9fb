use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quaternion::{self, Quaternion};

/// A vector in ℍⁿ, the right quaternionic module of n-tuples.
///
/// Scalars act on the right: `v.scale(q)` is `v·q` with components `vᵢ·q`.
/// Serializes as a list of component 4-arrays.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<[f64; 4]>", try_from = "Vec<[f64; 4]>")]
pub struct QVector {
    entries: Vec<Quaternion>,
}

impl QVector {
    /// Panics on an empty entry list; dimension zero is never meaningful here.
    pub fn new(entries: Vec<Quaternion>) -> Self {
        assert!(!entries.is_empty(), "vector must have at least one entry");
        QVector { entries }
    }

    pub fn zeros(n: usize) -> Self {
        QVector::new(vec![quaternion::ZERO; n])
    }

    /// The k-th standard basis vector of ℍⁿ (0-indexed).
    pub fn unit(n: usize, k: usize) -> Self {
        assert!(k < n, "unit index {k} out of range for dimension {n}");
        let mut entries = vec![quaternion::ZERO; n];
        entries[k] = quaternion::ONE;
        QVector::new(entries)
    }

    /// The standard orthonormal basis `e₁, …, eₙ`.
    pub fn standard_basis(n: usize) -> Vec<QVector> {
        (0..n).map(|k| QVector::unit(n, k)).collect()
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, i: usize) -> Quaternion {
        self.entries[i]
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.entries
    }

    /// Inner product `⟨self|other⟩ = Σᵢ conj(selfᵢ)·otherᵢ`.
    ///
    /// Conjugate-linear in the first slot and right-linear in the second:
    /// `⟨v|u·q⟩ = ⟨v|u⟩·q`.
    pub fn inner(&self, other: &QVector) -> Result<Quaternion> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "inner product of vectors with dims {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(p, q)| p.conj() * *q)
            .sum())
    }

    /// Norm induced by the inner product. `⟨v|v⟩` is real and non-negative up
    /// to rounding; the real part is clamped at zero before the square root.
    pub fn norm(&self) -> f64 {
        let ip = self.inner(self).expect("self inner product");
        ip.real_part().max(0.0).sqrt()
    }

    /// Right scalar action `v·q`.
    pub fn scale(&self, q: Quaternion) -> QVector {
        QVector::new(self.entries.iter().map(|v| *v * q).collect())
    }

    pub fn scale_real(&self, r: f64) -> QVector {
        QVector::new(self.entries.iter().map(|v| *v * r).collect())
    }

    pub fn add(&self, other: &QVector) -> Result<QVector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "sum of vectors with dims {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(QVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(p, q)| *p + *q)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &QVector) -> Result<QVector> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "difference of vectors with dims {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(QVector::new(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(p, q)| *p - *q)
                .collect(),
        ))
    }

    pub fn approx_eq(&self, other: &QVector, tol: f64) -> bool {
        self.dim() == other.dim()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(p, q)| p.approx_eq(q, tol))
    }

    pub fn max_entry_modulus(&self) -> f64 {
        self.entries.iter().map(|q| q.modulus()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|q| q.is_zero())
    }
}

impl From<QVector> for Vec<[f64; 4]> {
    fn from(v: QVector) -> Vec<[f64; 4]> {
        v.entries.iter().map(|q| q.components()).collect()
    }
}

impl TryFrom<Vec<[f64; 4]>> for QVector {
    type Error = Error;

    fn try_from(raw: Vec<[f64; 4]>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Parse("vector must have at least one entry".into()));
        }
        let entries = raw
            .into_iter()
            .map(Quaternion::try_from)
            .collect::<Result<Vec<_>>>()?;
        Ok(QVector { entries })
    }
}
