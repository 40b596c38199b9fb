use crate::error::{Error, Result};
use crate::qlinalg::elimination;
use crate::qlinalg::matrix::QMatrix;
use crate::qlinalg::vector::QVector;
use crate::tolerance::Tolerances;

fn dependency_threshold(vs: &[QVector], tol: &Tolerances) -> f64 {
    let scale = vs.iter().map(|v| v.max_entry_modulus()).fold(0.0, f64::max);
    tol.rank * scale
}

/// Modified Gram-Schmidt over ℍⁿ.
///
/// Projection coefficients multiply on the right, `w := w − z·⟨z|w⟩`, which
/// is the orthogonal projection in a right module. Fails with
/// `DependentInput` at the first vector whose residual after projection is
/// below the rank threshold.
pub fn gram_schmidt(vs: &[QVector], tol: &Tolerances) -> Result<Vec<QVector>> {
    if vs.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let threshold = dependency_threshold(vs, tol);
    let mut out: Vec<QVector> = Vec::with_capacity(vs.len());
    for (index, v) in vs.iter().enumerate() {
        let mut w = v.clone();
        for z in &out {
            let c = z.inner(&w)?;
            w = w.sub(&z.scale(c))?;
        }
        let norm = w.norm();
        if norm <= threshold {
            return Err(Error::DependentInput { index });
        }
        out.push(w.scale_real(1.0 / norm));
    }
    Ok(out)
}

/// Orthonormal basis of `span{vs}`, silently dropping dependent inputs.
pub fn span_orthonormal_basis(vs: &[QVector], tol: &Tolerances) -> Result<Vec<QVector>> {
    if vs.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let threshold = dependency_threshold(vs, tol);
    let mut out: Vec<QVector> = Vec::new();
    for v in vs {
        let mut w = v.clone();
        for z in &out {
            let c = z.inner(&w)?;
            w = w.sub(&z.scale(c))?;
        }
        let norm = w.norm();
        if norm > threshold {
            out.push(w.scale_real(1.0 / norm));
        }
    }
    Ok(out)
}

/// Orthonormal basis of the orthogonal complement of `span{vs}` in ℍⁿ.
///
/// A vector is orthogonal to every `vᵢ` exactly when it lies in the right
/// null space of `A*`, where `A` has the `vᵢ` as columns.
pub fn orth_complement(vs: &[QVector], tol: &Tolerances) -> Result<Vec<QVector>> {
    let a = QMatrix::from_columns(vs)?;
    let raw = elimination::null_space(&a.adjoint(), tol);
    if raw.is_empty() {
        return Ok(Vec::new());
    }
    span_orthonormal_basis(&raw, tol)
}

/// Whether the family spans all of ℍ^dim, i.e. has full rank as columns.
pub fn is_complete(vs: &[QVector], dim: usize, tol: &Tolerances) -> Result<bool> {
    if vs.is_empty() {
        return Err(Error::EmptyFamily);
    }
    for v in vs {
        if v.dim() != dim {
            return Err(Error::DimensionMismatch(format!(
                "vector has dim {}, expected {dim}",
                v.dim()
            )));
        }
    }
    let a = QMatrix::from_columns(vs)?;
    Ok(elimination::rank(&a, tol) == dim)
}

/// Pairwise check `⟨vᵢ|vⱼ⟩ = δᵢⱼ` under an absolute tolerance.
pub fn is_orthonormal(vs: &[QVector], tol_eq: f64) -> bool {
    for (i, a) in vs.iter().enumerate() {
        for (j, b) in vs.iter().enumerate() {
            let expected = if i == j {
                crate::quaternion::ONE
            } else {
                crate::quaternion::ZERO
            };
            match a.inner(b) {
                Ok(ip) if ip.approx_eq(&expected, tol_eq) => {}
                _ => return false,
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quaternion::{Quaternion, I, J, ONE, ZERO};

    const TOL: f64 = 1e-12;

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn orthonormalizes_shear_pair() {
        let vs = vec![QVector::unit(2, 0), QVector::new(vec![ONE, ONE])];
        let out = gram_schmidt(&vs, &tols()).unwrap();
        assert!(out[0].approx_eq(&QVector::unit(2, 0), TOL));
        assert!(out[1].approx_eq(&QVector::unit(2, 1), TOL));
    }

    #[test]
    fn keeps_right_scaled_unit_vectors() {
        // e₁·j is already unit; orthonormalization must not disturb it.
        let vs = vec![QVector::unit(2, 0).scale(J), QVector::unit(2, 1)];
        let out = gram_schmidt(&vs, &tols()).unwrap();
        assert!(out[0].approx_eq(&vs[0], TOL));
        assert!(out[1].approx_eq(&vs[1], TOL));
        assert!(is_orthonormal(&out, TOL));
    }

    #[test]
    fn flags_dependent_vector_by_index() {
        let vs = vec![
            QVector::unit(2, 0),
            QVector::unit(2, 1),
            QVector::new(vec![ONE, I]),
        ];
        // (1, i) = e₁ + e₂·i lies in the span of the first two.
        assert_eq!(
            gram_schmidt(&vs, &tols()),
            Err(Error::DependentInput { index: 2 })
        );
    }

    #[test]
    fn span_basis_drops_duplicates() {
        let vs = vec![
            QVector::unit(2, 0),
            QVector::unit(2, 0),
            QVector::new(vec![ONE, ONE]),
        ];
        let out = span_orthonormal_basis(&vs, &tols()).unwrap();
        assert_eq!(out.len(), 2);
        assert!(is_orthonormal(&out, TOL));
    }

    #[test]
    fn orthonormal_output_on_mixed_family() {
        let vs = vec![QVector::new(vec![ONE, I]), QVector::new(vec![J, ONE])];
        let out = gram_schmidt(&vs, &tols()).unwrap();
        assert!(is_orthonormal(&out, 1e-9));
        // Parseval on the span: ‖u‖² = Σ |⟨zᵢ|u⟩|² for u in the span.
        let q = Quaternion::new(0.3, -0.4, 0.1, 0.9);
        let u = vs[0].scale(q).add(&vs[1].scale(I)).unwrap();
        let total: f64 = out.iter().map(|z| z.inner(&u).unwrap().modulus_sq()).sum();
        assert!((total - u.norm() * u.norm()).abs() <= 1e-9);
    }

    #[test]
    fn complement_of_first_axis() {
        let vs = vec![QVector::unit(2, 0)];
        let comp = orth_complement(&vs, &tols()).unwrap();
        assert_eq!(comp.len(), 1);
        let ip = vs[0].inner(&comp[0]).unwrap();
        assert!(ip.approx_eq(&ZERO, TOL));
        assert!((comp[0].norm() - 1.0).abs() <= TOL);
    }

    #[test]
    fn complement_of_full_span_is_empty() {
        let vs = QVector::standard_basis(3);
        assert!(orth_complement(&vs, &tols()).unwrap().is_empty());
    }

    #[test]
    fn completeness_checks() {
        let full = vec![QVector::unit(2, 0), QVector::new(vec![ONE, ONE])];
        assert!(is_complete(&full, 2, &tols()).unwrap());
        let short = vec![QVector::unit(2, 0)];
        assert!(!is_complete(&short, 2, &tols()).unwrap());
    }
}
