//! Frames and Riesz bases in finite-dimensional right quaternionic Hilbert
//! spaces.
//!
//! The space is ℍⁿ with scalars acting on the right and the inner product
//! `⟨p|q⟩ = Σ conj(pᵢ)·qᵢ`, conjugate-linear in its first slot. On top of
//! that sit frame analysis (optimal bounds, tightness, exactness), Riesz
//! basis certification with dual families and reconstruction, operator
//! extension with norm bounds, and a deterministic generator for families of
//! prescribed character. Spectral questions are answered through the real
//! 4n×4n embedding, whose symmetric eigenproblem a cyclic Jacobi iteration
//! solves.

// Index loops mirror the subscript conventions of the underlying formulas.
#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod frames;
pub mod gen;
pub mod io;
pub mod qlinalg;
pub mod quaternion;
pub mod riesz;
pub mod tolerance;

pub use error::{Error, Result};
pub use frames::{FrameReport, FrameSystem};
pub use gen::{gen_family, FamilyKind, GenConfig, GeneratedFamily, SplitMix64};
pub use io::{canonical_json, parse_family, read_family, write_family, FamilyFile};
pub use qlinalg::{QMatrix, QVector};
pub use quaternion::Quaternion;
pub use riesz::{
    canonical_dual, dual_riesz, extend_operator, is_riesz_basis, make_riesz, make_riesz_standard,
    reconstruct, riesz_basis_for_span, riesz_sequence_bounds, subfamily_bounds, FailureTag,
    RieszBasisCheck, RieszCertificate, RieszVerdict,
};
pub use tolerance::Tolerances;
