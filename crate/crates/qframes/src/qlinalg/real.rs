use crate::error::{Error, Result};

/// Dense real matrix, row-major. Support type for the real embedding of
/// quaternionic matrices; only what the eigensolver needs lives here.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        RealMatrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RealMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> RealMatrix {
        let mut m = RealMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j));
            }
        }
        m
    }

    pub fn matmul(&self, other: &RealMatrix) -> RealMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut m = RealMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    m.set(i, j, m.get(i, j) + aik * other.get(k, j));
                }
            }
        }
        m
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &RealMatrix) -> f64 {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Averages the matrix with its transpose. Inputs that are Hermitian up
    /// to rounding come out exactly symmetric, which the eigensolver needs.
    pub fn symmetrized(&self) -> RealMatrix {
        assert_eq!(self.rows, self.cols, "symmetrization needs a square matrix");
        let mut m = RealMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, 0.5 * (self.get(i, j) + self.get(j, i)));
            }
        }
        m
    }
}

pub struct JacobiEigen {
    /// Eigenvalues in ascending order.
    pub eigenvalues: Vec<f64>,
    /// Eigenvectors as columns, in the same order.
    pub vectors: RealMatrix,
}

const JACOBI_MAX_SWEEPS: usize = 100;
const JACOBI_REL_TOL: f64 = 1e-12;

fn off_diagonal_norm(a: &RealMatrix) -> f64 {
    let n = a.rows();
    let mut sum = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            let v = a.get(p, q);
            sum += 2.0 * v * v;
        }
    }
    sum.sqrt()
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Sweeps rotate away each off-diagonal entry in turn until the off-diagonal
/// Frobenius norm drops below `1e-12` times the Frobenius norm of the input.
/// Convergence is quadratic once the matrix is nearly diagonal; failing to
/// converge within 100 sweeps is reported rather than returning junk.
pub fn jacobi_eigen(a: &RealMatrix) -> Result<JacobiEigen> {
    assert_eq!(
        a.rows(),
        a.cols(),
        "eigendecomposition needs a square matrix"
    );
    let n = a.rows();
    let mut m = a.clone();
    let mut v = RealMatrix::identity(n);
    let scale = a.frobenius_norm();

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&m) <= JACOBI_REL_TOL * scale {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let theta = (m.get(q, q) - m.get(p, p)) / (2.0 * apq);
                // Smaller-angle root of t² + 2θt − 1 = 0; the closed form
                // overflows for huge θ, where t ≈ 1/(2θ).
                let t = if theta.abs() > 1e100 {
                    0.5 / theta
                } else {
                    let s = if theta >= 0.0 { 1.0 } else { -1.0 };
                    s / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;

                let app = m.get(p, p);
                let aqq = m.get(q, q);
                m.set(p, p, app - t * apq);
                m.set(q, q, aqq + t * apq);
                m.set(p, q, 0.0);
                m.set(q, p, 0.0);
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = m.get(r, p);
                    let arq = m.get(r, q);
                    m.set(r, p, c * arp - s * arq);
                    m.set(p, r, c * arp - s * arq);
                    m.set(r, q, s * arp + c * arq);
                    m.set(q, r, s * arp + c * arq);
                }
                for r in 0..n {
                    let vrp = v.get(r, p);
                    let vrq = v.get(r, q);
                    v.set(r, p, c * vrp - s * vrq);
                    v.set(r, q, s * vrp + c * vrq);
                }
            }
        }
    }
    if !converged && off_diagonal_norm(&m) > JACOBI_REL_TOL * scale {
        return Err(Error::ConvergenceFailure(JACOBI_MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m.get(i, i)
            .partial_cmp(&m.get(j, j))
            .expect("eigenvalues are finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m.get(i, i)).collect();
    let mut vectors = RealMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors.set(r, new_col, v.get(r, old_col));
        }
    }
    Ok(JacobiEigen {
        eigenvalues,
        vectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-10;

    fn check_decomposition(a: &RealMatrix, eig: &JacobiEigen) {
        let n = a.rows();
        for k in 0..n {
            let lambda = eig.eigenvalues[k];
            for i in 0..n {
                let mut av = 0.0;
                for j in 0..n {
                    av += a.get(i, j) * eig.vectors.get(j, k);
                }
                assert!(
                    (av - lambda * eig.vectors.get(i, k)).abs() <= TOL * (1.0 + lambda.abs()),
                    "residual too large at eigenpair {k}"
                );
            }
        }
        let vtv = eig.vectors.transpose().matmul(&eig.vectors);
        assert!(vtv.max_abs_diff(&RealMatrix::identity(n)) <= TOL);
    }

    #[test]
    fn diagonal_matrix_sorts_spectrum() {
        let mut a = RealMatrix::zeros(3, 3);
        a.set(0, 0, 5.0);
        a.set(1, 1, -1.0);
        a.set(2, 2, 2.0);
        let eig = jacobi_eigen(&a).unwrap();
        assert_eq!(eig.eigenvalues, vec![-1.0, 2.0, 5.0]);
        check_decomposition(&a, &eig);
    }

    #[test]
    fn swap_matrix_has_plus_minus_one() {
        let mut a = RealMatrix::zeros(2, 2);
        a.set(0, 1, 1.0);
        a.set(1, 0, 1.0);
        let eig = jacobi_eigen(&a).unwrap();
        assert!((eig.eigenvalues[0] + 1.0).abs() <= TOL);
        assert!((eig.eigenvalues[1] - 1.0).abs() <= TOL);
        check_decomposition(&a, &eig);
    }

    #[test]
    fn tridiagonal_known_spectrum() {
        // eigenvalues of tridiag(-1, 2, -1) at size 3: 2 - √2, 2, 2 + √2
        let mut a = RealMatrix::zeros(3, 3);
        for i in 0..3 {
            a.set(i, i, 2.0);
        }
        a.set(0, 1, -1.0);
        a.set(1, 0, -1.0);
        a.set(1, 2, -1.0);
        a.set(2, 1, -1.0);
        let eig = jacobi_eigen(&a).unwrap();
        let r2 = 2.0_f64.sqrt();
        assert!((eig.eigenvalues[0] - (2.0 - r2)).abs() <= TOL);
        assert!((eig.eigenvalues[1] - 2.0).abs() <= TOL);
        assert!((eig.eigenvalues[2] - (2.0 + r2)).abs() <= TOL);
        check_decomposition(&a, &eig);
    }

    #[test]
    fn zero_matrix_converges() {
        let a = RealMatrix::zeros(4, 4);
        let eig = jacobi_eigen(&a).unwrap();
        assert!(eig.eigenvalues.iter().all(|&l| l == 0.0));
    }

    #[test]
    fn pseudo_random_symmetric_matrix() {
        let n = 8;
        let mut state: u64 = 0x1234_5678_9abc_def0;
        let mut next = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
        };
        let mut a = RealMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = next();
                a.set(i, j, v);
                a.set(j, i, v);
            }
        }
        let eig = jacobi_eigen(&a).unwrap();
        check_decomposition(&a, &eig);
        for k in 1..n {
            assert!(eig.eigenvalues[k - 1] <= eig.eigenvalues[k]);
        }
    }
}
