use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{self, QMatrix, QVector};
use crate::quaternion::Quaternion;
use crate::tolerance::Tolerances;

/// A finite indexed family of vectors in ℍⁿ, the object frame analysis runs
/// on. The family need not span, need not be independent, and may repeat
/// vectors; `analyze` classifies whatever it is given.
#[derive(Debug, Clone, PartialEq)]
pub struct FrameSystem {
    vectors: Vec<QVector>,
    dim: usize,
}

impl FrameSystem {
    pub fn new(vectors: Vec<QVector>, dim: usize) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::EmptyFamily);
        }
        for (i, v) in vectors.iter().enumerate() {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch(format!(
                    "family vector {i} has dim {}, expected {dim}",
                    v.dim()
                )));
            }
        }
        Ok(FrameSystem { vectors, dim })
    }

    /// Infers the ambient dimension from the first vector.
    pub fn from_vectors(vectors: Vec<QVector>) -> Result<Self> {
        let dim = vectors.first().ok_or(Error::EmptyFamily)?.dim();
        FrameSystem::new(vectors, dim)
    }

    pub fn vectors(&self) -> &[QVector] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    /// A constructed family always has at least one vector.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The n×m matrix with the family as columns.
    pub fn synthesis_matrix(&self) -> QMatrix {
        QMatrix::from_columns(&self.vectors).expect("family is non-empty and validated")
    }

    /// Synthesis `T{qᵢ} = Σ uᵢ·qᵢ`: coefficients enter on the right.
    pub fn synthesis(&self, coeffs: &[Quaternion]) -> Result<QVector> {
        if coeffs.len() != self.vectors.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} coefficients for a family of {}",
                coeffs.len(),
                self.vectors.len()
            )));
        }
        let mut acc = QVector::zeros(self.dim);
        for (u, q) in self.vectors.iter().zip(coeffs) {
            acc = acc.add(&u.scale(*q))?;
        }
        Ok(acc)
    }

    /// Analysis `T*u = {⟨uᵢ|u⟩}`, the adjoint of synthesis.
    pub fn analysis(&self, u: &QVector) -> Result<Vec<Quaternion>> {
        self.vectors.iter().map(|v| v.inner(u)).collect()
    }

    /// Frame operator `S = TT* = U·U*`; Hermitian and positive
    /// semi-definite by construction.
    pub fn frame_operator(&self) -> QMatrix {
        let u = self.synthesis_matrix();
        u.matmul(&u.adjoint()).expect("dimensions agree")
    }

    /// Gram matrix `U*U` of pairwise inner products `⟨uᵢ|uⱼ⟩`.
    pub fn gram(&self) -> QMatrix {
        let u = self.synthesis_matrix();
        u.adjoint().matmul(&u).expect("dimensions agree")
    }

    /// Classifies the family and computes its optimal frame bounds.
    pub fn analyze(&self, tol: &Tolerances) -> Result<FrameReport> {
        let s = self.frame_operator();
        let spectrum = qlinalg::hermitian_spectrum(&s, tol)?;
        let lower = spectrum.min().max(0.0);
        let upper = spectrum.max().max(0.0);

        // λmin(S) > 0 is exactly the frame condition; the cutoff scales with
        // the operator so near-singular families classify as non-frames.
        let is_frame = lower > tol.rank * s.max_entry_modulus();
        let tight = is_frame && (upper - lower) <= tol.spec;
        let parseval = tight && (lower - 1.0).abs() <= tol.spec;

        // A frame is exact when no single vector can be removed: with any
        // vector dropped, the rest must fail to span.
        let exact = is_frame && self.leave_one_out_never_spans(tol);

        Ok(FrameReport {
            is_bessel: true,
            is_frame,
            lower_bound: lower,
            upper_bound: upper,
            tight,
            parseval,
            exact,
            tol_eq: tol.eq,
            tol_rank: tol.rank,
            tol_spec: tol.spec,
        })
    }

    fn leave_one_out_never_spans(&self, tol: &Tolerances) -> bool {
        if self.vectors.len() == 1 {
            // Removing the only vector leaves nothing, which spans only {0}.
            return true;
        }
        for skip in 0..self.vectors.len() {
            let rest: Vec<QVector> = self
                .vectors
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, v)| v.clone())
                .collect();
            let m = QMatrix::from_columns(&rest).expect("at least one vector remains");
            if qlinalg::rank(&m, tol) == self.dim {
                return false;
            }
        }
        true
    }
}

/// Result of frame analysis. Every finite family is Bessel, so `is_bessel`
/// is reported for completeness; the bounds are the extreme eigenvalues of
/// the frame operator and are optimal whenever the family is a frame.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameReport {
    pub is_bessel: bool,
    pub is_frame: bool,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub tight: bool,
    pub parseval: bool,
    pub exact: bool,
    pub tol_eq: f64,
    pub tol_rank: f64,
    pub tol_spec: f64,
}
