use crate::error::{Error, Result};
use crate::qlinalg::matrix::QMatrix;
use crate::qlinalg::real::{jacobi_eigen, RealMatrix};
use crate::qlinalg::vector::QVector;
use crate::quaternion::Quaternion;
use crate::tolerance::Tolerances;

/// Real 4×4 block of a quaternion under the left-multiplication
/// representation: the columns are the components of q·1, q·i, q·j, q·k.
/// This makes the embedding a ring homomorphism that intertwines the
/// quaternionic adjoint with the real transpose.
fn block(q: Quaternion) -> [[f64; 4]; 4] {
    let [a, b, c, d] = q.components();
    [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]
}

/// Embeds an r×c quaternionic matrix as a 4r×4c real matrix, one 4×4 block
/// per entry. Satisfies `embed(AB) = embed(A)·embed(B)`,
/// `embed(A*) = embed(A)ᵀ` and `embed(A)·vec(v) = vec(Av)`.
pub fn embed_real(a: &QMatrix) -> RealMatrix {
    let mut m = RealMatrix::zeros(4 * a.rows(), 4 * a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let b = block(a.get(i, j));
            for r in 0..4 {
                for c in 0..4 {
                    m.set(4 * i + r, 4 * j + c, b[r][c]);
                }
            }
        }
    }
    m
}

/// Flattens a quaternionic vector to 4n reals, entry components in order.
pub fn vectorize(v: &QVector) -> Vec<f64> {
    let mut out = Vec::with_capacity(4 * v.dim());
    for i in 0..v.dim() {
        out.extend_from_slice(&v.entry(i).components());
    }
    out
}

/// Inverse of [`vectorize`]; the length must be a positive multiple of 4.
pub fn devectorize(x: &[f64]) -> QVector {
    assert!(
        !x.is_empty() && x.len().is_multiple_of(4),
        "component list length must be a positive multiple of 4"
    );
    QVector::new(
        x.chunks_exact(4)
            .map(|c| Quaternion::new(c[0], c[1], c[2], c[3]))
            .collect(),
    )
}

/// Distinct eigenvalues of a Hermitian matrix, ascending, with their
/// quaternionic multiplicities.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
}

impl Spectrum {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn max(&self) -> f64 {
        *self.eigenvalues.last().expect("spectrum is never empty")
    }
}

/// Eigendecomposition of a Hermitian matrix over ℍ.
pub struct HermitianEigen {
    pub spectrum: Spectrum,
    /// One unit right-eigenvector per distinct eigenvalue: `A·v = v·λ`.
    pub pairs: Vec<(f64, QVector)>,
}

/// Full eigendecomposition of a Hermitian quaternionic matrix, through the
/// real embedding.
///
/// Hermitian matrices over ℍ have real right eigenvalues, and the embedded
/// 4n×4n symmetric matrix carries each of them with multiplicity divisible
/// by 4. The real spectrum is therefore grouped in sorted runs of 4; a group
/// with spread beyond `tol.spec` (relative to the largest eigenvalue
/// magnitude, floored at 1) indicates a solver failure and is reported as
/// `MultiplicityAnomaly`. Groups closer than the same tolerance merge into a
/// single eigenvalue of higher multiplicity. A real eigenvector from each
/// group devectorizes to a quaternionic right-eigenvector.
pub fn hermitian_eigen(a: &QMatrix, tol: &Tolerances) -> Result<HermitianEigen> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if !a.is_hermitian(tol.eq) {
        return Err(Error::NotHermitian);
    }
    let n = a.rows();
    // The embedding of a Hermitian matrix is symmetric up to rounding;
    // symmetrizing makes it exact, which the Jacobi iteration assumes.
    let eig = jacobi_eigen(&embed_real(a).symmetrized())?;
    let vals = &eig.eigenvalues;

    let scale = vals.iter().fold(1.0_f64, |m, &v| m.max(v.abs()));
    let group_tol = tol.spec * scale;

    let mut chunk_means = Vec::with_capacity(n);
    for g in 0..n {
        let chunk = &vals[4 * g..4 * g + 4];
        let spread = chunk[3] - chunk[0];
        if spread > group_tol {
            return Err(Error::MultiplicityAnomaly(format!(
                "eigenvalue group {g} has spread {spread:.3e}, above {group_tol:.3e}"
            )));
        }
        chunk_means.push(chunk.iter().sum::<f64>() / 4.0);
    }

    let mut eigenvalues = Vec::new();
    let mut multiplicities = Vec::new();
    let mut pairs = Vec::new();
    let mut g = 0;
    while g < n {
        let mut run = 1;
        while g + run < n && chunk_means[g + run] - chunk_means[g + run - 1] <= group_tol {
            run += 1;
        }
        let mean = chunk_means[g..g + run].iter().sum::<f64>() / run as f64;
        eigenvalues.push(mean);
        multiplicities.push(run);
        pairs.push((mean, devectorize(&eig.vectors.column(4 * g))));
        g += run;
    }

    Ok(HermitianEigen {
        spectrum: Spectrum {
            eigenvalues,
            multiplicities,
        },
        pairs,
    })
}

/// Eigenvalues only; see [`hermitian_eigen`].
pub fn hermitian_spectrum(a: &QMatrix, tol: &Tolerances) -> Result<Spectrum> {
    hermitian_eigen(a, tol).map(|e| e.spectrum)
}

/// Operator norm `‖A‖ = √λmax(A*A)`, valid for rectangular matrices.
pub fn op_norm(a: &QMatrix, _tol: &Tolerances) -> Result<f64> {
    let gram = a.adjoint().matmul(a)?;
    let eig = jacobi_eigen(&embed_real(&gram).symmetrized())?;
    let lmax = eig.eigenvalues.last().copied().unwrap_or(0.0);
    Ok(lmax.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::{I, J, K, ONE, ZERO};

    const TOL: f64 = 1e-12;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn block_columns_are_right_multiples() {
        let q = Quaternion::new(0.3, -1.2, 0.7, 2.5);
        let b = block(q);
        let expected = [q * ONE, q * I, q * J, q * K];
        for (col, prod) in expected.iter().enumerate() {
            let comps = prod.components();
            for row in 0..4 {
                assert_eq!(b[row][col], comps[row]);
            }
        }
    }

    #[test]
    fn embedding_is_multiplicative() {
        let a = QMatrix::from_columns(&[
            QVector::new(vec![ONE + I, J]),
            QVector::new(vec![K, ONE - J]),
        ])
        .unwrap();
        let b = QMatrix::from_columns(&[
            QVector::new(vec![J, ONE * 0.5]),
            QVector::new(vec![ONE, I + K]),
        ])
        .unwrap();
        let lhs = embed_real(&a.matmul(&b).unwrap());
        let rhs = embed_real(&a).matmul(&embed_real(&b));
        assert!(lhs.max_abs_diff(&rhs) <= TOL);
    }

    #[test]
    fn embedding_sends_adjoint_to_transpose() {
        let a = QMatrix::from_columns(&[
            QVector::new(vec![ONE + I, J * 2.0, K]),
            QVector::new(vec![ZERO, ONE, I - J]),
        ])
        .unwrap();
        let lhs = embed_real(&a.adjoint());
        let rhs = embed_real(&a).transpose();
        assert_eq!(lhs.max_abs_diff(&rhs), 0.0);
    }

    #[test]
    fn embedding_intertwines_matrix_action() {
        let a =
            QMatrix::from_columns(&[QVector::new(vec![ONE, I]), QVector::new(vec![J, ONE + K])])
                .unwrap();
        let v = QVector::new(vec![ONE + J, I * 0.5]);
        let via_embed = {
            let m = embed_real(&a);
            let x = vectorize(&v);
            let mut out = vec![0.0; m.rows()];
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out[i] += m.get(i, j) * x[j];
                }
            }
            out
        };
        let direct = vectorize(&a.matvec(&v).unwrap());
        for (x, y) in via_embed.iter().zip(&direct) {
            assert!((x - y).abs() <= TOL);
        }
    }

    #[test]
    fn vectorize_round_trip() {
        let v = QVector::new(vec![ONE + I, J - K]);
        assert_eq!(devectorize(&vectorize(&v)), v);
    }

    #[test]
    fn diagonal_spectrum() {
        let mut a = QMatrix::zeros(2, 2);
        a.set(0, 0, ONE * 2.0);
        a.set(1, 1, ONE);
        let eig = hermitian_eigen(&a, &tols()).unwrap();
        assert_eq!(eig.spectrum.eigenvalues.len(), 2);
        assert!((eig.spectrum.min() - 1.0).abs() <= 1e-10);
        assert!((eig.spectrum.max() - 2.0).abs() <= 1e-10);
        assert_eq!(eig.spectrum.multiplicities, vec![1, 1]);
        for (lambda, v) in &eig.pairs {
            let av = a.matvec(v).unwrap();
            assert!(av.approx_eq(&v.scale_real(*lambda), 1e-9));
            assert!((v.norm() - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn identity_collapses_to_one_eigenvalue() {
        let spec = hermitian_spectrum(&QMatrix::identity(3), &tols()).unwrap();
        assert_eq!(spec.eigenvalues.len(), 1);
        assert_eq!(spec.multiplicities, vec![3]);
        assert!((spec.min() - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn real_symmetric_known_eigenvalues() {
        // [[1,1],[1,2]] has eigenvalues (3 ∓ √5)/2.
        let mut a = QMatrix::zeros(2, 2);
        a.set(0, 0, ONE);
        a.set(0, 1, ONE);
        a.set(1, 0, ONE);
        a.set(1, 1, ONE * 2.0);
        let spec = hermitian_spectrum(&a, &tols()).unwrap();
        let r5 = 5.0_f64.sqrt();
        assert!((spec.min() - (3.0 - r5) / 2.0).abs() <= 1e-10);
        assert!((spec.max() - (3.0 + r5) / 2.0).abs() <= 1e-10);
    }

    #[test]
    fn quaternionic_hermitian_eigenvalues() {
        // [[2, i], [-i, 1]]: eigenvalues 3/2 ± √(5)/2.
        let mut a = QMatrix::zeros(2, 2);
        a.set(0, 0, ONE * 2.0);
        a.set(0, 1, I);
        a.set(1, 0, -I);
        a.set(1, 1, ONE);
        let eig = hermitian_eigen(&a, &tols()).unwrap();
        let d = (5.0_f64).sqrt() / 2.0;
        assert!((eig.spectrum.min() - (1.5 - d)).abs() <= 1e-10);
        assert!((eig.spectrum.max() - (1.5 + d)).abs() <= 1e-10);
        for (lambda, v) in &eig.pairs {
            let av = a.matvec(v).unwrap();
            assert!(av.approx_eq(&v.scale_real(*lambda), 1e-9));
        }
    }

    #[test]
    fn rejects_non_hermitian_input() {
        let mut a = QMatrix::zeros(2, 2);
        a.set(0, 1, ONE);
        assert!(matches!(
            hermitian_eigen(&a, &tols()),
            Err(Error::NotHermitian)
        ));
    }

    #[test]
    fn op_norm_values() {
        assert!((op_norm(&QMatrix::identity(3), &tols()).unwrap() - 1.0).abs() <= 1e-10);

        let mut d = QMatrix::zeros(2, 2);
        d.set(0, 0, ONE * 2.0);
        d.set(1, 1, ONE);
        assert!((op_norm(&d, &tols()).unwrap() - 2.0).abs() <= 1e-10);

        let col = QMatrix::from_columns(&[QVector::new(vec![ONE, ONE])]).unwrap();
        assert!((op_norm(&col, &tols()).unwrap() - 2.0_f64.sqrt()).abs() <= 1e-10);
    }
}
