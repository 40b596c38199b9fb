use serde::{Deserialize, Serialize};

/// The three numeric thresholds every analysis runs under.
///
/// * `eq` — componentwise absolute tolerance for equality-style checks
///   (orthonormality, Hermitian symmetry, biorthogonality).
/// * `rank` — relative pivot threshold; a pivot counts as nonzero when its
///   modulus exceeds `rank` times the largest entry modulus of the matrix
///   being eliminated. The same scaling decides frame and Riesz-sequence
///   lower-bound positivity.
/// * `spec` — tolerance for spectral comparisons: eigenvalue multiplicity
///   grouping, tight/Parseval classification and operator-norm bounds.
///
/// Reports echo whichever values were in force so results stay reproducible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub eq: f64,
    pub rank: f64,
    pub spec: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            eq: 1e-9,
            rank: 1e-8,
            spec: 1e-7,
        }
    }
}
