use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qlinalg::{self, QMatrix, QVector};
use crate::quaternion::Quaternion;
use crate::riesz;
use crate::tolerance::Tolerances;

/// SplitMix64 (Steele, Lea & Flood), the fixed generator behind every
/// reproducible family. State advances by the golden-gamma increment and the
/// output is a finalizing mix of the new state; the full sequence is a pure
/// function of the seed, which is what makes generated files stable across
/// platforms.
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in [0, 1) with the full 53 bits of double precision.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in [-1, 1).
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_unit() - 1.0
    }
}

/// One quaternion, components drawn in order x0, x1, x2, x3 from [-1, 1).
pub fn gen_quaternion(rng: &mut SplitMix64) -> Quaternion {
    let x0 = rng.next_symmetric();
    let x1 = rng.next_symmetric();
    let x2 = rng.next_symmetric();
    let x3 = rng.next_symmetric();
    Quaternion::new(x0, x1, x2, x3)
}

pub fn gen_vector(rng: &mut SplitMix64, n: usize) -> QVector {
    QVector::new((0..n).map(|_| gen_quaternion(rng)).collect())
}

/// Matrix drawn column by column: entry (i, j) is drawn before (i', j') when
/// j < j' or (j = j' and i < i'). The order is part of the reproducibility
/// contract for generated files.
pub fn gen_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> QMatrix {
    let columns: Vec<QVector> = (0..cols).map(|_| gen_vector(rng, rows)).collect();
    QMatrix::from_columns(&columns).expect("dimensions are positive")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyKind {
    /// Orthonormal family of `count ≤ dim` vectors.
    Onb,
    /// Riesz basis: `count = dim` vectors with an invertible, condition-capped
    /// synthesis operator; the operator ships with the family.
    Riesz,
    /// Frame of `count ≥ dim` vectors: an invertible core plus extras.
    Frame,
    /// Bessel but not frame: all vectors confined to a proper subspace.
    BesselOnly,
    /// Dependent family: the first vector appears twice.
    RankDeficient,
    /// Complete but dependent: `count > dim` with a spanning core.
    Overcomplete,
}

fn default_condition_cap() -> f64 {
    1e6
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    pub dim: usize,
    pub count: usize,
    pub kind: FamilyKind,
    /// Largest accepted condition number for operators drawn by `riesz`,
    /// `frame`, `bessel_only` and `overcomplete`; rejected draws resample.
    #[serde(default = "default_condition_cap")]
    pub condition_cap: f64,
}

pub struct GeneratedFamily {
    pub config: GenConfig,
    pub vectors: Vec<QVector>,
    pub operator: Option<QMatrix>,
}

const MAX_RESAMPLES: usize = 100;

/// Draws a square matrix that is invertible with condition number at most
/// `cap`, resampling on rejection.
fn gen_conditioned_invertible(
    rng: &mut SplitMix64,
    n: usize,
    cap: f64,
    tol: &Tolerances,
) -> Result<QMatrix> {
    for _ in 0..MAX_RESAMPLES {
        let u = gen_matrix(rng, n, n);
        let seq = riesz::riesz_sequence_bounds(&u.columns(), tol)?;
        if seq.is_riesz_sequence(tol) && seq.lower >= seq.upper / (cap * cap) {
            return Ok(u);
        }
    }
    Err(Error::GenerationFailure(MAX_RESAMPLES))
}

/// Produces a family of the requested kind, deterministically from the seed.
pub fn gen_family(cfg: &GenConfig, tol: &Tolerances) -> Result<GeneratedFamily> {
    if cfg.dim == 0 {
        return Err(Error::InvalidConfig("dim must be at least 1".into()));
    }
    if cfg.count == 0 {
        return Err(Error::InvalidConfig("count must be at least 1".into()));
    }
    if !(cfg.condition_cap.is_finite() && cfg.condition_cap >= 1.0) {
        return Err(Error::InvalidConfig(
            "condition_cap must be finite and at least 1".into(),
        ));
    }
    let mut rng = SplitMix64::new(cfg.seed);
    let n = cfg.dim;
    let m = cfg.count;
    let cap = cfg.condition_cap;

    let (vectors, operator) = match cfg.kind {
        FamilyKind::Onb => {
            if m > n {
                return Err(Error::InvalidConfig(format!(
                    "onb admits at most dim = {n} vectors, requested {m}"
                )));
            }
            let mut out = None;
            for _ in 0..MAX_RESAMPLES {
                let draw = gen_matrix(&mut rng, n, m);
                match qlinalg::gram_schmidt(&draw.columns(), tol) {
                    Ok(vs) => {
                        out = Some(vs);
                        break;
                    }
                    Err(Error::DependentInput { .. }) => continue,
                    Err(e) => return Err(e),
                }
            }
            (out.ok_or(Error::GenerationFailure(MAX_RESAMPLES))?, None)
        }
        FamilyKind::Riesz => {
            if m != n {
                return Err(Error::InvalidConfig(format!(
                    "riesz requires count = dim, got count {m} and dim {n}"
                )));
            }
            let u = gen_conditioned_invertible(&mut rng, n, cap, tol)?;
            (u.columns(), Some(u))
        }
        FamilyKind::Frame => {
            if m < n {
                return Err(Error::InvalidConfig(format!(
                    "frame requires count ≥ dim, got count {m} and dim {n}"
                )));
            }
            let core = gen_conditioned_invertible(&mut rng, n, cap, tol)?;
            let mut vs = core.columns();
            vs.extend((n..m).map(|_| gen_vector(&mut rng, n)));
            (vs, None)
        }
        FamilyKind::BesselOnly => {
            if n < 2 {
                return Err(Error::InvalidConfig(
                    "bessel_only requires dim ≥ 2 so a proper subspace exists".into(),
                ));
            }
            let core = gen_conditioned_invertible(&mut rng, n, cap, tol)?;
            let spanners: Vec<QVector> = core.columns().into_iter().take(n - 1).collect();
            let mut vs = Vec::with_capacity(m);
            for _ in 0..m {
                let mut v = QVector::zeros(n);
                for s in &spanners {
                    v = v.add(&s.scale(gen_quaternion(&mut rng)))?;
                }
                vs.push(v);
            }
            (vs, None)
        }
        FamilyKind::RankDeficient => {
            if m < 2 {
                return Err(Error::InvalidConfig(
                    "rank_deficient needs count ≥ 2 to repeat a vector".into(),
                ));
            }
            let mut vs: Vec<QVector> = (0..m - 1).map(|_| gen_vector(&mut rng, n)).collect();
            vs.push(vs[0].clone());
            (vs, None)
        }
        FamilyKind::Overcomplete => {
            if m <= n {
                return Err(Error::InvalidConfig(format!(
                    "overcomplete requires count > dim, got count {m} and dim {n}"
                )));
            }
            let core = gen_conditioned_invertible(&mut rng, n, cap, tol)?;
            let mut vs = core.columns();
            vs.extend((n..m).map(|_| gen_vector(&mut rng, n)));
            (vs, None)
        }
    };

    Ok(GeneratedFamily {
        config: *cfg,
        vectors,
        operator,
    })
}
