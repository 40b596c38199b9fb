use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frames::FrameSystem;
use crate::qlinalg::{self, QMatrix, QVector};
use crate::tolerance::Tolerances;

/// Absolute tolerance at which the two dual constructions (inverse-adjoint
/// columns and frame-operator inversion) are required to agree.
pub const DUAL_CROSS_CHECK_TOL: f64 = 1e-8;

/// Reasons a family fails to be a Riesz basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FailureTag {
    /// The family does not span ℍⁿ.
    NotComplete,
    /// The Gram matrix has (numerically) zero smallest eigenvalue, so no
    /// positive lower Riesz bound exists.
    LowerBoundZero,
    /// The family is square but its synthesis matrix is singular.
    NotInvertible,
}

/// Witness that a family is a Riesz basis: the invertible operator `u`
/// carrying an orthonormal basis onto it, the image family `x`, the dual
/// family `y`, and optimal bounds `lower = 1/‖u⁻¹‖²`, `upper = ‖u‖²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RieszCertificate {
    pub dim: usize,
    pub u: QMatrix,
    #[serde(skip)]
    pub basis: Vec<QVector>,
    pub x: Vec<QVector>,
    pub y: Vec<QVector>,
    pub lower: f64,
    pub upper: f64,
    pub tol: Tolerances,
}

/// Applies an invertible operator to an orthonormal basis, producing the
/// Riesz basis `xₙ = U·bₙ` together with its dual `yₙ = (U⁻¹)*·bₙ` and the
/// bounds `1/‖U⁻¹‖² ≤ ‖U‖²`.
pub fn make_riesz(u: &QMatrix, basis: &[QVector], tol: &Tolerances) -> Result<RieszCertificate> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "operator must be square, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    let n = u.rows();
    if basis.len() != n || basis.iter().any(|b| b.dim() != n) {
        return Err(Error::DimensionMismatch(format!(
            "operator is {n}x{n} but basis has {} vectors",
            basis.len()
        )));
    }
    if !qlinalg::is_orthonormal(basis, tol.eq) {
        return Err(Error::NotOrthonormal(
            "input family is not orthonormal within tol_eq".into(),
        ));
    }
    let u_inv = qlinalg::invert(u, tol)?;
    let dual_op = u_inv.adjoint();

    let x = basis
        .iter()
        .map(|b| u.matvec(b))
        .collect::<Result<Vec<_>>>()?;
    let y = basis
        .iter()
        .map(|b| dual_op.matvec(b))
        .collect::<Result<Vec<_>>>()?;

    let inv_norm = qlinalg::op_norm(&u_inv, tol)?;
    let lower = 1.0 / (inv_norm * inv_norm);
    let norm = qlinalg::op_norm(u, tol)?;
    let upper = norm * norm;

    Ok(RieszCertificate {
        dim: n,
        u: u.clone(),
        basis: basis.to_vec(),
        x,
        y,
        lower,
        upper,
        tol: *tol,
    })
}

/// [`make_riesz`] against the standard basis `e₁, …, eₙ`; the resulting
/// family is exactly the columns of `u`.
pub fn make_riesz_standard(u: &QMatrix, tol: &Tolerances) -> Result<RieszCertificate> {
    if !u.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "operator must be square, got {}x{}",
            u.rows(),
            u.cols()
        )));
    }
    make_riesz(u, &QVector::standard_basis(u.rows()), tol)
}

/// Canonical dual `S⁻¹xₙ` through the frame operator `S = Σ xᵢ⟨xᵢ|·⟩`.
pub fn canonical_dual(x: &[QVector], tol: &Tolerances) -> Result<Vec<QVector>> {
    let fam = FrameSystem::from_vectors(x.to_vec())?;
    let s_inv = qlinalg::invert(&fam.frame_operator(), tol)?;
    x.iter().map(|v| s_inv.matvec(v)).collect()
}

/// Dual of a Riesz basis, computed two independent ways and cross-checked.
///
/// The primary construction takes the columns of `(U*)⁻¹` where `U` has the
/// family as columns; the check recomputes the dual as `S⁻¹xₙ`. Disagreement
/// beyond [`DUAL_CROSS_CHECK_TOL`] means the conditioning is too poor to
/// certify either answer.
pub fn dual_riesz(x: &[QVector], tol: &Tolerances) -> Result<Vec<QVector>> {
    let check = is_riesz_basis(x, tol)?;
    let cert = match check.verdict {
        RieszVerdict::Basis(cert) => cert,
        RieszVerdict::NotBasis(report) => {
            return Err(Error::NotRieszBasis {
                tags: report.failures,
            })
        }
    };
    let canonical = canonical_dual(x, tol)?;
    let mut worst = 0.0_f64;
    for (a, b) in cert.y.iter().zip(&canonical) {
        for i in 0..a.dim() {
            worst = worst.max(a.entry(i).max_component_diff(&b.entry(i)));
        }
    }
    if worst > DUAL_CROSS_CHECK_TOL {
        return Err(Error::DualCrossCheck(worst));
    }
    Ok(cert.y)
}

/// Both dual expansions of `u`: `Σ xₙ·⟨yₙ|u⟩` and `Σ yₙ·⟨xₙ|u⟩`. For a
/// Riesz basis and its dual each reproduces `u`.
pub fn reconstruct(x: &[QVector], y: &[QVector], u: &QVector) -> Result<(QVector, QVector)> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "families have {} and {} vectors",
            x.len(),
            y.len()
        )));
    }
    if x.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut primary = QVector::zeros(u.dim());
    let mut swapped = QVector::zeros(u.dim());
    for (xn, yn) in x.iter().zip(y) {
        primary = primary.add(&xn.scale(yn.inner(u)?))?;
        swapped = swapped.add(&yn.scale(xn.inner(u)?))?;
    }
    Ok((primary, swapped))
}

/// Extreme eigenvalues of the Gram matrix: the optimal Riesz sequence
/// bounds when the lower one is positive.
pub struct RieszSequenceBounds {
    pub lower: f64,
    pub upper: f64,
    pub gram: QMatrix,
}

impl RieszSequenceBounds {
    /// Positive lower bound relative to the Gram scale.
    pub fn is_riesz_sequence(&self, tol: &Tolerances) -> bool {
        self.lower > tol.rank * self.gram.max_entry_modulus()
    }
}

pub fn riesz_sequence_bounds(x: &[QVector], tol: &Tolerances) -> Result<RieszSequenceBounds> {
    let fam = FrameSystem::from_vectors(x.to_vec())?;
    let gram = fam.gram();
    let spectrum = qlinalg::hermitian_spectrum(&gram, tol)?;
    Ok(RieszSequenceBounds {
        lower: spectrum.min().max(0.0),
        upper: spectrum.max().max(0.0),
        gram,
    })
}

/// Why a family failed, with a witness direction when independence is the
/// problem: `null_direction` holds coefficients `{cᵢ}` with `Σ xᵢcᵢ ≈ 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub failures: Vec<FailureTag>,
    pub gram_lower: f64,
    pub null_direction: Option<QVector>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RieszVerdict {
    Basis(RieszCertificate),
    NotBasis(CounterexampleReport),
}

pub struct RieszBasisCheck {
    /// Family spans ℍⁿ.
    pub complete: bool,
    /// Smallest Gram eigenvalue, clamped at zero.
    pub sequence_lower: f64,
    /// Positive lower Riesz bound.
    pub riesz_sequence: bool,
    /// Square synthesis matrix with an inverse.
    pub invertible: bool,
    pub verdict: RieszVerdict,
}

/// Decides whether a family is a Riesz basis, two ways at once.
///
/// Route one asks for completeness together with a positive lower Riesz
/// bound; route two asks for an invertible square synthesis matrix. These
/// characterize the same families, and both are computed so the agreement is
/// asserted on every call.
pub fn is_riesz_basis(x: &[QVector], tol: &Tolerances) -> Result<RieszBasisCheck> {
    let fam = FrameSystem::from_vectors(x.to_vec())?;
    let n = fam.dim();
    let m = fam.len();
    let u = fam.synthesis_matrix();

    let complete = qlinalg::rank(&u, tol) == n;
    let seq = riesz_sequence_bounds(x, tol)?;
    let riesz_sequence = seq.is_riesz_sequence(tol);
    let via_sequence = complete && riesz_sequence;

    let mut invertible = false;
    if m == n {
        match qlinalg::invert(&u, tol) {
            Ok(_) => invertible = true,
            Err(Error::Singular(_)) => {}
            Err(e) => return Err(e),
        }
    }
    assert_eq!(
        via_sequence, invertible,
        "complete Riesz sequence and invertible synthesis must coincide"
    );

    let verdict = if invertible {
        RieszVerdict::Basis(make_riesz_standard(&u, tol)?)
    } else {
        let mut failures = Vec::new();
        if !complete {
            failures.push(FailureTag::NotComplete);
        }
        if !riesz_sequence {
            failures.push(FailureTag::LowerBoundZero);
        }
        if m == n {
            failures.push(FailureTag::NotInvertible);
        }
        let null_direction = if riesz_sequence {
            None
        } else {
            let eig = qlinalg::hermitian_eigen(&seq.gram, tol)?;
            Some(eig.pairs[0].1.clone())
        };
        RieszVerdict::NotBasis(CounterexampleReport {
            failures,
            gram_lower: seq.lower,
            null_direction,
        })
    };

    Ok(RieszBasisCheck {
        complete,
        sequence_lower: seq.lower,
        riesz_sequence,
        invertible,
        verdict,
    })
}

/// The operator sending one family onto another, with its norm bound.
pub struct ExtensionReport {
    /// `W` with `W·xₙ = yₙ` for every n.
    pub matrix: QMatrix,
    pub op_norm: f64,
    /// Lower Riesz bound of the source family.
    pub lower: f64,
    /// Upper Riesz bound of the target family.
    pub upper: f64,
    /// `√(upper/lower)`, which the operator norm cannot exceed.
    pub norm_bound: f64,
    pub within_bound: bool,
}

/// Builds the unique right-linear operator with `W·xₙ = yₙ`.
///
/// Requires the source family to be a Riesz basis of its space: complete
/// and with a positive lower bound. The target family only contributes its
/// upper bound, so it may be anything of matching length. The norm estimate
/// `‖W‖ ≤ √(B_y/A_x)` is reported along with whether the computed norm
/// satisfies it (up to `tol.spec`).
pub fn extend_operator(x: &[QVector], y: &[QVector], tol: &Tolerances) -> Result<ExtensionReport> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyFamily);
    }
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "source has {} vectors, target has {}",
            x.len(),
            y.len()
        )));
    }
    let fam = FrameSystem::from_vectors(x.to_vec())?;
    let n = fam.dim();
    let u = fam.synthesis_matrix();

    let r = qlinalg::rank(&u, tol);
    if r < n {
        return Err(Error::NotComplete { rank: r, dim: n });
    }
    let seq = riesz_sequence_bounds(x, tol)?;
    if !seq.is_riesz_sequence(tol) {
        return Err(Error::LowerBoundZero);
    }
    // Complete with a positive lower bound forces a square synthesis matrix.
    let u_inv = qlinalg::invert(&u, tol)?;

    let target = QMatrix::from_columns(y)?;
    let w = target.matmul(&u_inv)?;

    let y_bounds = riesz_sequence_bounds(y, tol)?;
    let norm = qlinalg::op_norm(&w, tol)?;
    let norm_bound = (y_bounds.upper / seq.lower).sqrt();

    Ok(ExtensionReport {
        matrix: w,
        op_norm: norm,
        lower: seq.lower,
        upper: y_bounds.upper,
        norm_bound,
        within_bound: norm <= norm_bound + tol.spec,
    })
}

/// Riesz bounds of the subfamily picked out by `idx`. Principal submatrices
/// of the Gram matrix keep their eigenvalues inside the parent's range, so
/// these bounds always sit within the full family's.
pub fn subfamily_bounds(
    x: &[QVector],
    idx: &[usize],
    tol: &Tolerances,
) -> Result<RieszSequenceBounds> {
    if idx.is_empty() {
        return Err(Error::EmptyFamily);
    }
    let mut sub = Vec::with_capacity(idx.len());
    for &i in idx {
        if i >= x.len() {
            return Err(Error::InvalidInput(format!(
                "subfamily index {i} out of range for {} vectors",
                x.len()
            )));
        }
        sub.push(x[i].clone());
    }
    riesz_sequence_bounds(&sub, tol)
}

pub struct SpanCheck {
    /// Dimension of the span of the family.
    pub span_dim: usize,
    /// Riesz basis check of the family re-expressed inside its span.
    pub check: RieszBasisCheck,
}

/// Tests whether the family is a Riesz basis for its own span, by rewriting
/// every vector in an orthonormal basis of that span and deciding the
/// reduced family. A family of zero vectors has no span to speak of.
pub fn riesz_basis_for_span(x: &[QVector], tol: &Tolerances) -> Result<SpanCheck> {
    let fam = FrameSystem::from_vectors(x.to_vec())?;
    let span = qlinalg::span_orthonormal_basis(fam.vectors(), tol)?;
    if span.is_empty() {
        return Err(Error::InvalidInput(
            "family spans only the zero subspace".into(),
        ));
    }
    let reduced: Vec<QVector> = x
        .iter()
        .map(|v| {
            Ok(QVector::new(
                span.iter()
                    .map(|z| z.inner(v))
                    .collect::<Result<Vec<_>>>()?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpanCheck {
        span_dim: span.len(),
        check: is_riesz_basis(&reduced, tol)?,
    })
}
