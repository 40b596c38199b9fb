use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default componentwise absolute tolerance for equality-style checks.
pub const DEFAULT_TOL_EQ: f64 = 1e-9;

/// A quaternion `x0 + x1·i + x2·j + x3·k` over 64-bit floats.
///
/// Multiplication follows the Hamilton rules `i² = j² = k² = −1`,
/// `ij = −ji = k`, `jk = −kj = i`, `ki = −ik = j`, so the product is
/// non-commutative. Constructors reject non-finite components, which keeps
/// every downstream invariant assertable.
///
/// Serializes as the 4-array `[x0, x1, x2, x3]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "[f64; 4]", try_from = "[f64; 4]")]
pub struct Quaternion {
    x0: f64,
    x1: f64,
    x2: f64,
    x3: f64,
}

pub const ZERO: Quaternion = Quaternion {
    x0: 0.0,
    x1: 0.0,
    x2: 0.0,
    x3: 0.0,
};
pub const ONE: Quaternion = Quaternion {
    x0: 1.0,
    x1: 0.0,
    x2: 0.0,
    x3: 0.0,
};
pub const I: Quaternion = Quaternion {
    x0: 0.0,
    x1: 1.0,
    x2: 0.0,
    x3: 0.0,
};
pub const J: Quaternion = Quaternion {
    x0: 0.0,
    x1: 0.0,
    x2: 1.0,
    x3: 0.0,
};
pub const K: Quaternion = Quaternion {
    x0: 0.0,
    x1: 0.0,
    x2: 0.0,
    x3: 1.0,
};

impl Quaternion {
    /// Builds a quaternion from its four real components.
    ///
    /// Panics if any component is NaN or infinite; use [`Quaternion::try_new`]
    /// on untrusted input.
    pub fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        assert!(
            x0.is_finite() && x1.is_finite() && x2.is_finite() && x3.is_finite(),
            "quaternion components must be finite, got [{x0}, {x1}, {x2}, {x3}]"
        );
        Quaternion { x0, x1, x2, x3 }
    }

    /// Fallible constructor for untrusted (e.g. parsed) components.
    pub fn try_new(x0: f64, x1: f64, x2: f64, x3: f64) -> Result<Self> {
        if x0.is_finite() && x1.is_finite() && x2.is_finite() && x3.is_finite() {
            Ok(Quaternion { x0, x1, x2, x3 })
        } else {
            Err(Error::NonFinite)
        }
    }

    /// Embeds a real number as the quaternion `r + 0i + 0j + 0k`.
    pub fn real(r: f64) -> Self {
        Quaternion::new(r, 0.0, 0.0, 0.0)
    }

    pub fn components(&self) -> [f64; 4] {
        [self.x0, self.x1, self.x2, self.x3]
    }

    /// Conjugate: negates the three imaginary components.
    pub fn conj(&self) -> Self {
        Quaternion {
            x0: self.x0,
            x1: -self.x1,
            x2: -self.x2,
            x3: -self.x3,
        }
    }

    /// Modulus `√(x0² + x1² + x2² + x3²)`.
    pub fn modulus(&self) -> f64 {
        self.modulus_sq().sqrt()
    }

    /// Squared modulus; equals the real part of `conj(q)·q`.
    pub fn modulus_sq(&self) -> f64 {
        self.x0 * self.x0 + self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3
    }

    /// Multiplicative inverse `conj(q) / |q|²`.
    pub fn inverse(&self) -> Result<Self> {
        let m2 = self.modulus_sq();
        if m2 == 0.0 {
            return Err(Error::ZeroDivisor);
        }
        Ok(self.conj() / m2)
    }

    /// The real component `x0`.
    pub fn real_part(&self) -> f64 {
        self.x0
    }

    /// The imaginary part `x1·i + x2·j + x3·k` as a quaternion.
    pub fn imag_part(&self) -> Self {
        Quaternion {
            x0: 0.0,
            x1: self.x1,
            x2: self.x2,
            x3: self.x3,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x0 == 0.0 && self.x1 == 0.0 && self.x2 == 0.0 && self.x3 == 0.0
    }

    /// Componentwise comparison under an absolute tolerance.
    pub fn approx_eq(&self, other: &Quaternion, tol: f64) -> bool {
        (self.x0 - other.x0).abs() <= tol
            && (self.x1 - other.x1).abs() <= tol
            && (self.x2 - other.x2).abs() <= tol
            && (self.x3 - other.x3).abs() <= tol
    }

    /// Largest componentwise difference from `other`.
    pub fn max_component_diff(&self, other: &Quaternion) -> f64 {
        (self.x0 - other.x0)
            .abs()
            .max((self.x1 - other.x1).abs())
            .max((self.x2 - other.x2).abs())
            .max((self.x3 - other.x3).abs())
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> [f64; 4] {
        q.components()
    }
}

impl TryFrom<[f64; 4]> for Quaternion {
    type Error = Error;

    fn try_from(c: [f64; 4]) -> Result<Self> {
        Quaternion::try_new(c[0], c[1], c[2], c[3])
    }
}

impl Add for Quaternion {
    type Output = Quaternion;

    fn add(self, q: Quaternion) -> Quaternion {
        Quaternion::new(
            self.x0 + q.x0,
            self.x1 + q.x1,
            self.x2 + q.x2,
            self.x3 + q.x3,
        )
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;

    fn sub(self, q: Quaternion) -> Quaternion {
        Quaternion::new(
            self.x0 - q.x0,
            self.x1 - q.x1,
            self.x2 - q.x2,
            self.x3 - q.x3,
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion {
            x0: -self.x0,
            x1: -self.x1,
            x2: -self.x2,
            x3: -self.x3,
        }
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Quaternion;

    fn mul(self, q: Quaternion) -> Quaternion {
        let p = self;
        Quaternion::new(
            p.x0 * q.x0 - p.x1 * q.x1 - p.x2 * q.x2 - p.x3 * q.x3,
            p.x0 * q.x1 + p.x1 * q.x0 + p.x2 * q.x3 - p.x3 * q.x2,
            p.x0 * q.x2 - p.x1 * q.x3 + p.x2 * q.x0 + p.x3 * q.x1,
            p.x0 * q.x3 + p.x1 * q.x2 - p.x2 * q.x1 + p.x3 * q.x0,
        )
    }
}

/// Scaling by a real number (reals are central in the quaternions).
impl Mul<f64> for Quaternion {
    type Output = Quaternion;

    fn mul(self, r: f64) -> Quaternion {
        Quaternion::new(self.x0 * r, self.x1 * r, self.x2 * r, self.x3 * r)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;

    fn div(self, r: f64) -> Quaternion {
        Quaternion::new(self.x0 / r, self.x1 / r, self.x2 / r, self.x3 / r)
    }
}

impl Sum for Quaternion {
    fn sum<It: Iterator<Item = Quaternion>>(iter: It) -> Quaternion {
        iter.fold(ZERO, |acc, q| acc + q)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}i {} {}j {} {}k",
            self.x0,
            if self.x1 < 0.0 { "-" } else { "+" },
            self.x1.abs(),
            if self.x2 < 0.0 { "-" } else { "+" },
            self.x2.abs(),
            if self.x3 < 0.0 { "-" } else { "+" },
            self.x3.abs(),
        )
    }
}
