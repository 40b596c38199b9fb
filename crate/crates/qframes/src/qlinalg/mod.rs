//! Linear algebra over ℍⁿ as a right module: vectors, left-acting matrices,
//! elimination, orthonormalization, and spectral computations routed through
//! the real embedding.

pub mod elimination;
pub mod matrix;
pub mod orthonormal;
pub mod real;
pub mod spectrum;
pub mod vector;

pub use elimination::{invert, null_space, rank, solve};
pub use matrix::QMatrix;
pub use orthonormal::{
    gram_schmidt, is_complete, is_orthonormal, orth_complement, span_orthonormal_basis,
};
pub use real::{jacobi_eigen, JacobiEigen, RealMatrix};
pub use spectrum::{
    devectorize, embed_real, hermitian_eigen, hermitian_spectrum, op_norm, vectorize,
    HermitianEigen, Spectrum,
};
pub use vector::QVector;
