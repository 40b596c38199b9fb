use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::vector::QVector;
use crate::quaternion::{self, Quaternion};

/// A quaternionic matrix acting on ℍⁿ from the left, `(Av)ᵢ = Σⱼ Aᵢⱼ·vⱼ`.
///
/// Left action commutes with the right scalar action on vectors, which is
/// what makes these the right-linear operators on ℍⁿ. Storage is row-major;
/// serialization is by columns, matching the on-disk vector-family layout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "Vec<QVector>", try_from = "Vec<QVector>")]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        QMatrix {
            rows,
            cols,
            data: vec![quaternion::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, quaternion::ONE);
        }
        m
    }

    /// Builds the matrix whose j-th column is `columns[j]`.
    pub fn from_columns(columns: &[QVector]) -> Result<Self> {
        if columns.is_empty() {
            return Err(Error::EmptyFamily);
        }
        let rows = columns[0].dim();
        for (j, c) in columns.iter().enumerate() {
            if c.dim() != rows {
                return Err(Error::DimensionMismatch(format!(
                    "column {j} has dim {}, expected {rows}",
                    c.dim()
                )));
            }
        }
        let mut m = QMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for i in 0..rows {
                m.set(i, j, c.entry(i));
            }
        }
        Ok(m)
    }

    pub fn from_rows_vec(rows: usize, cols: usize, data: Vec<Quaternion>) -> Self {
        assert_eq!(data.len(), rows * cols, "row-major data length mismatch");
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        QMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Quaternion {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, q: Quaternion) {
        self.data[i * self.cols + j] = q;
    }

    pub fn column(&self, j: usize) -> QVector {
        QVector::new((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn columns(&self) -> Vec<QVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Conjugate transpose `A*`, the adjoint for the standard inner product:
    /// `⟨Av|w⟩ = ⟨v|A*w⟩`.
    pub fn adjoint(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).conj());
            }
        }
        m
    }

    pub fn matmul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{} matrices",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = quaternion::ZERO;
                for k in 0..self.cols {
                    acc = acc + self.get(i, k) * other.get(k, j);
                }
                m.set(i, j, acc);
            }
        }
        Ok(m)
    }

    pub fn matvec(&self, v: &QVector) -> Result<QVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to vector of dim {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = quaternion::ZERO;
            for k in 0..self.cols {
                acc = acc + self.get(i, k) * v.entry(k);
            }
            out.push(acc);
        }
        Ok(QVector::new(out))
    }

    pub fn add(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "sum of {}x{} and {}x{} matrices",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(p, q)| *p + *q)
            .collect();
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "difference of {}x{} and {}x{} matrices",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(p, q)| *p - *q)
            .collect();
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale_real(&self, r: f64) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|q| *q * r).collect(),
        }
    }

    pub fn max_entry_modulus(&self) -> f64 {
        self.data.iter().map(|q| q.modulus()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &QMatrix, tol: f64) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(p, q)| p.approx_eq(q, tol))
    }

    /// Hermitian check `Aᵢⱼ = conj(Aⱼᵢ)` under an absolute tolerance.
    pub fn is_hermitian(&self, tol: f64) -> bool {
        if !self.is_square() {
            return false;
        }
        for i in 0..self.rows {
            for j in i..self.cols {
                if !self.get(i, j).approx_eq(&self.get(j, i).conj(), tol) {
                    return false;
                }
            }
        }
        true
    }
}

impl From<QMatrix> for Vec<QVector> {
    fn from(m: QMatrix) -> Vec<QVector> {
        m.columns()
    }
}

impl TryFrom<Vec<QVector>> for QMatrix {
    type Error = Error;

    fn try_from(columns: Vec<QVector>) -> Result<Self> {
        QMatrix::from_columns(&columns)
    }
}
