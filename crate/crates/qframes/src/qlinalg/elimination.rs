use crate::error::{Error, Result};
use crate::qlinalg::matrix::QMatrix;
use crate::qlinalg::vector::QVector;
use crate::quaternion::{self, Quaternion};
use crate::tolerance::Tolerances;

/// Gaussian elimination over the quaternions.
///
/// Every nonzero quaternion is invertible, so elimination runs exactly as in
/// the commutative case provided all row operations multiply from the left:
/// scaling a row by `q` sends the system `Ax = b` to `(EA)x = Eb` and
/// preserves the solution set. Pivots are chosen by largest modulus in the
/// column (ties go to the lowest row index), and an entry counts as a pivot
/// only when its modulus exceeds `tol.rank` times the largest entry modulus
/// of the original matrix.
struct Reduction {
    rows: Vec<Vec<Quaternion>>,
    pivot_cols: Vec<usize>,
}

fn reduce(a: &QMatrix, augment: Option<&QMatrix>, tol: &Tolerances) -> Result<Reduction> {
    let n_rows = a.rows();
    let n_cols = a.cols();
    let aug_cols = augment.map_or(0, |m| m.cols());
    if let Some(m) = augment {
        if m.rows() != n_rows {
            return Err(Error::DimensionMismatch(format!(
                "augmentation has {} rows, matrix has {n_rows}",
                m.rows()
            )));
        }
    }

    let threshold = tol.rank * a.max_entry_modulus();

    let mut rows: Vec<Vec<Quaternion>> = (0..n_rows)
        .map(|i| {
            let mut row: Vec<Quaternion> = (0..n_cols).map(|j| a.get(i, j)).collect();
            if let Some(m) = augment {
                row.extend((0..aug_cols).map(|j| m.get(i, j)));
            }
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let mut best = r;
        let mut best_mod = rows[r][c].modulus();
        for i in (r + 1)..n_rows {
            let m = rows[i][c].modulus();
            if m > best_mod {
                best = i;
                best_mod = m;
            }
        }
        if best_mod <= threshold {
            continue;
        }
        rows.swap(r, best);

        let inv = rows[r][c].inverse()?;
        for j in c..(n_cols + aug_cols) {
            rows[r][j] = inv * rows[r][j];
        }
        rows[r][c] = quaternion::ONE;

        for i in 0..n_rows {
            if i == r {
                continue;
            }
            let factor = rows[i][c];
            if factor.is_zero() {
                continue;
            }
            for j in c..(n_cols + aug_cols) {
                let delta = factor * rows[r][j];
                rows[i][j] = rows[i][j] - delta;
            }
            rows[i][c] = quaternion::ZERO;
        }

        pivot_cols.push(c);
        r += 1;
    }

    Ok(Reduction { rows, pivot_cols })
}

/// Number of pivots under `tol.rank`, i.e. the dimension of the column span.
pub fn rank(a: &QMatrix, tol: &Tolerances) -> usize {
    reduce(a, None, tol)
        .expect("reduction without augmentation cannot fail")
        .pivot_cols
        .len()
}

/// Solves the square system `Ax = b` for the right-module unknown `x`.
pub fn solve(a: &QMatrix, b: &QVector, tol: &Tolerances) -> Result<QVector> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "solve requires a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if b.dim() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side has dim {}, matrix has {} rows",
            b.dim(),
            a.rows()
        )));
    }
    let rhs = QMatrix::from_columns(std::slice::from_ref(b))?;
    let red = reduce(a, Some(&rhs), tol)?;
    let n = a.rows();
    if red.pivot_cols.len() < n {
        return Err(Error::Singular(format!(
            "system has rank {} < {n}",
            red.pivot_cols.len()
        )));
    }
    Ok(QVector::new((0..n).map(|i| red.rows[i][n]).collect()))
}

/// Inverse of a square matrix, by reducing `[A | I]` to `[I | A⁻¹]`.
pub fn invert(a: &QMatrix, tol: &Tolerances) -> Result<QMatrix> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "inverse requires a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let red = reduce(a, Some(&QMatrix::identity(n)), tol)?;
    if red.pivot_cols.len() < n {
        return Err(Error::Singular(format!(
            "matrix has rank {} < {n}",
            red.pivot_cols.len()
        )));
    }
    let mut inv = QMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, red.rows[i][n + j]);
        }
    }
    Ok(inv)
}

/// Basis of the right null space `{v : Av = 0}`, one vector per free column.
pub fn null_space(a: &QMatrix, tol: &Tolerances) -> Vec<QVector> {
    let red = reduce(a, None, tol).expect("reduction without augmentation cannot fail");
    let n_cols = a.cols();
    let pivot_of_col: Vec<Option<usize>> = {
        let mut map = vec![None; n_cols];
        for (row, &col) in red.pivot_cols.iter().enumerate() {
            map[col] = Some(row);
        }
        map
    };
    let mut basis = Vec::new();
    for free in 0..n_cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![quaternion::ZERO; n_cols];
        v[free] = quaternion::ONE;
        for (row, &col) in red.pivot_cols.iter().enumerate() {
            // Pivot row reads v[col] + R[row][free]·v[free] = 0.
            v[col] = -red.rows[row][free];
        }
        basis.push(QVector::new(v));
    }
    basis
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
    fn inverts_identity() {
        let id = QMatrix::identity(3);
        assert!(invert(&id, &tols()).unwrap().approx_eq(&id, TOL));
    }

    #[test]
    fn inverts_scalar_imaginary() {
        let a = QMatrix::from_columns(&[QVector::new(vec![I])]).unwrap();
        let inv = invert(&a, &tols()).unwrap();
        assert!(inv.get(0, 0).approx_eq(&-I, TOL));
    }

    #[test]
    fn inverts_unitriangular() {
        let a =
            QMatrix::from_columns(&[QVector::new(vec![ONE, ZERO]), QVector::new(vec![ONE, ONE])])
                .unwrap();
        let inv = invert(&a, &tols()).unwrap();
        let expected =
            QMatrix::from_columns(&[QVector::new(vec![ONE, ZERO]), QVector::new(vec![-ONE, ONE])])
                .unwrap();
        assert!(inv.approx_eq(&expected, TOL));
        let prod = a.matmul(&inv).unwrap();
        assert!(prod.approx_eq(&QMatrix::identity(2), TOL));
    }

    #[test]
    fn solves_noncommutative_system() {
        // i·x = j has the unique solution x = i⁻¹·j = -i·j = -k.
        let a = QMatrix::from_columns(&[QVector::new(vec![I])]).unwrap();
        let b = QVector::new(vec![J]);
        let x = solve(&a, &b, &tols()).unwrap();
        assert!(x.entry(0).approx_eq(&-K, TOL));
        assert!(a.matvec(&x).unwrap().approx_eq(&b, TOL));
    }

    #[test]
    fn solves_diagonal_system() {
        let a = QMatrix::from_columns(&[
            QVector::new(vec![ONE * 2.0, ZERO]),
            QVector::new(vec![ZERO, J]),
        ])
        .unwrap();
        let b = QVector::new(vec![ONE * 2.0, ONE]);
        let x = solve(&a, &b, &tols()).unwrap();
        assert!(x.approx_eq(&QVector::new(vec![ONE, -J]), TOL));
    }

    #[test]
    fn repeated_column_drops_rank() {
        let a =
            QMatrix::from_columns(&[QVector::new(vec![ONE, ZERO]), QVector::new(vec![ONE, ZERO])])
                .unwrap();
        assert_eq!(rank(&a, &tols()), 1);
        assert!(matches!(invert(&a, &tols()), Err(Error::Singular(_))));
    }

    #[test]
    fn rank_of_zero_matrix_is_zero() {
        assert_eq!(rank(&QMatrix::zeros(3, 2), &tols()), 0);
    }

    #[test]
    fn null_space_of_row_vector() {
        // [1 i]·v = 0 forces v₁ = -i·v₂.
        let a = QMatrix::from_columns(&[QVector::new(vec![ONE]), QVector::new(vec![I])]).unwrap();
        let basis = null_space(&a, &tols());
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        assert!(a.matvec(v).unwrap().max_entry_modulus() <= TOL);
        assert!(v.entry(0).approx_eq(&-I, TOL));
        assert!(v.entry(1).approx_eq(&ONE, TOL));
    }

    #[test]
    fn null_space_of_invertible_matrix_is_empty() {
        let a =
            QMatrix::from_columns(&[QVector::new(vec![ONE, I]), QVector::new(vec![J, ONE + K])])
                .unwrap();
        if invert(&a, &tols()).is_ok() {
            assert!(null_space(&a, &tols()).is_empty());
        }
    }

    #[test]
    fn solution_survives_right_scaling_of_rhs() {
        // A(x·q) = (Ax)·q, so scaling b on the right scales the solution.
        let a = QMatrix::from_columns(&[QVector::new(vec![ONE, I]), QVector::new(vec![J, ONE])])
            .unwrap();
        let b = QVector::new(vec![ONE + K, J]);
        let q = Quaternion::new(0.5, -1.0, 0.25, 2.0);
        let x = solve(&a, &b, &tols()).unwrap();
        let xq = solve(&a, &b.scale(q), &tols()).unwrap();
        assert!(xq.approx_eq(&x.scale(q), 1e-9));
    }
}
