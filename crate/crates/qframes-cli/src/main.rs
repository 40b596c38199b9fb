use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qframes::error::Error;
use qframes::io::{self, FamilyFile, ToleranceOverrides};
use qframes::riesz::{self, FailureTag, RieszVerdict};
use qframes::{gen, FamilyKind, FrameSystem, GenConfig, QVector, Tolerances};

/// Frame and Riesz-basis analysis for families of quaternionic vectors.
///
/// Reads the JSON family format, prints one JSON report per invocation and
/// signals the verdict through the exit code: 0 success, 1 unreadable or
/// malformed input, 2 structurally invalid request, 3 negative verdict,
/// 4 internal numerical failure.
#[derive(Parser)]
#[command(name = "qframes", version, disable_help_subcommand = true)]
struct Cli {
    /// Componentwise equality tolerance (overrides file and defaults).
    #[arg(long, global = true)]
    tol_eq: Option<f64>,
    /// Relative rank/pivot threshold.
    #[arg(long, global = true)]
    tol_rank: Option<f64>,
    /// Spectral comparison tolerance.
    #[arg(long, global = true)]
    tol_spec: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Frame analysis: optimal bounds and classification flags.
    Analyze { path: PathBuf },
    /// Dual family of a Riesz basis, as a loadable family file.
    Dual { path: PathBuf },
    /// Riesz sequence bounds; with --riesz, full basis certification.
    Verify {
        path: PathBuf,
        /// Certify a Riesz basis instead of reporting sequence bounds.
        #[arg(long)]
        riesz: bool,
    },
    /// Expand a signal in a Riesz basis and its dual; reports both residuals.
    Reconstruct {
        path: PathBuf,
        /// Family file holding exactly one vector.
        #[arg(long)]
        signal: PathBuf,
    },
    /// Generate a family of prescribed character from a seed.
    Gen {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        kind: KindArg,
        /// Generator seed; the QFRAMES_SEED environment variable wins when set.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the family here as well as to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1e6)]
        condition_cap: f64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum KindArg {
    Onb,
    Riesz,
    Frame,
    BesselOnly,
    RankDeficient,
    Overcomplete,
}

impl From<KindArg> for FamilyKind {
    fn from(k: KindArg) -> FamilyKind {
        match k {
            KindArg::Onb => FamilyKind::Onb,
            KindArg::Riesz => FamilyKind::Riesz,
            KindArg::Frame => FamilyKind::Frame,
            KindArg::BesselOnly => FamilyKind::BesselOnly,
            KindArg::RankDeficient => FamilyKind::RankDeficient,
            KindArg::Overcomplete => FamilyKind::Overcomplete,
        }
    }
}

#[derive(Serialize)]
struct TolEcho {
    tol_eq: f64,
    tol_rank: f64,
    tol_spec: f64,
}

impl From<Tolerances> for TolEcho {
    fn from(t: Tolerances) -> TolEcho {
        TolEcho {
            tol_eq: t.eq,
            tol_rank: t.rank,
            tol_spec: t.spec,
        }
    }
}

#[derive(Serialize)]
struct SequenceDoc {
    riesz_sequence: bool,
    lower: f64,
    upper: f64,
    dim: usize,
    count: usize,
    #[serde(flatten)]
    tol: TolEcho,
}

#[derive(Serialize)]
struct CertifiedDoc {
    riesz_basis: bool,
    certificate: riesz::RieszCertificate,
    #[serde(flatten)]
    tol: TolEcho,
}

#[derive(Serialize)]
struct RefutedDoc {
    riesz_basis: bool,
    complete: bool,
    sequence_lower: f64,
    riesz_sequence: bool,
    invertible: bool,
    failures: Vec<FailureTag>,
    null_direction: Option<QVector>,
    #[serde(flatten)]
    tol: TolEcho,
}

#[derive(Serialize)]
struct NotBasisDoc {
    riesz_basis: bool,
    failures: Vec<FailureTag>,
    #[serde(flatten)]
    tol: TolEcho,
}

#[derive(Serialize)]
struct ReconstructDoc {
    dim: usize,
    residual_primary: f64,
    residual_swapped: f64,
    #[serde(flatten)]
    tol: TolEcho,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse(_) | Error::Io(_) => 1,
        Error::DimensionMismatch(_)
        | Error::EmptyFamily
        | Error::InvalidInput(_)
        | Error::InvalidConfig(_)
        | Error::NonFinite => 2,
        Error::NotRieszBasis { .. } => 3,
        _ => 4,
    }
}

fn flag_overrides(cli: &Cli) -> ToleranceOverrides {
    ToleranceOverrides {
        eq: cli.tol_eq,
        rank: cli.tol_rank,
        spec: cli.tol_spec,
    }
}

/// Defaults, then file overrides, then explicit flags.
fn effective_tolerances(cli: &Cli, file: Option<&FamilyFile>) -> Tolerances {
    let base = match file {
        Some(f) => f.effective_tolerances(Tolerances::default()),
        None => Tolerances::default(),
    };
    flag_overrides(cli).apply(base)
}

fn emit<T: Serialize>(doc: &T) {
    print!("{}", io::canonical_json(doc));
}

fn run(cli: &Cli) -> Result<u8, Error> {
    match &cli.command {
        Command::Analyze { path } => cmd_analyze(cli, path),
        Command::Dual { path } => cmd_dual(cli, path),
        Command::Verify { path, riesz } => cmd_verify(cli, path, *riesz),
        Command::Reconstruct { path, signal } => cmd_reconstruct(cli, path, signal),
        Command::Gen {
            dim,
            count,
            kind,
            seed,
            out,
            condition_cap,
        } => cmd_gen(
            cli,
            *dim,
            *count,
            *kind,
            *seed,
            out.as_deref(),
            *condition_cap,
        ),
    }
}

fn cmd_analyze(cli: &Cli, path: &Path) -> Result<u8, Error> {
    let file = io::read_family(path)?;
    let tol = effective_tolerances(cli, Some(&file));
    let fam = FrameSystem::new(file.vectors.clone(), file.dim)?;
    let report = fam.analyze(&tol)?;
    emit(&report);
    Ok(if report.is_frame { 0 } else { 3 })
}

fn cmd_dual(cli: &Cli, path: &Path) -> Result<u8, Error> {
    let file = io::read_family(path)?;
    let tol = effective_tolerances(cli, Some(&file));
    match riesz::dual_riesz(&file.vectors, &tol) {
        Ok(dual) => {
            let out = FamilyFile {
                version: io::FORMAT_VERSION.to_string(),
                dim: file.dim,
                tolerances: Some(ToleranceOverrides {
                    eq: Some(tol.eq),
                    rank: Some(tol.rank),
                    spec: Some(tol.spec),
                }),
                gen: None,
                vectors: dual,
                operator: None,
            };
            emit(&out);
            Ok(0)
        }
        Err(Error::NotRieszBasis { tags }) => {
            emit(&NotBasisDoc {
                riesz_basis: false,
                failures: tags,
                tol: tol.into(),
            });
            Ok(3)
        }
        Err(e) => Err(e),
    }
}

fn cmd_verify(cli: &Cli, path: &Path, riesz_mode: bool) -> Result<u8, Error> {
    let file = io::read_family(path)?;
    let tol = effective_tolerances(cli, Some(&file));
    if riesz_mode {
        let check = riesz::is_riesz_basis(&file.vectors, &tol)?;
        match check.verdict {
            RieszVerdict::Basis(cert) => {
                emit(&CertifiedDoc {
                    riesz_basis: true,
                    certificate: cert,
                    tol: tol.into(),
                });
                Ok(0)
            }
            RieszVerdict::NotBasis(report) => {
                emit(&RefutedDoc {
                    riesz_basis: false,
                    complete: check.complete,
                    sequence_lower: check.sequence_lower,
                    riesz_sequence: check.riesz_sequence,
                    invertible: check.invertible,
                    failures: report.failures,
                    null_direction: report.null_direction,
                    tol: tol.into(),
                });
                Ok(3)
            }
        }
    } else {
        let seq = riesz::riesz_sequence_bounds(&file.vectors, &tol)?;
        let ok = seq.is_riesz_sequence(&tol);
        emit(&SequenceDoc {
            riesz_sequence: ok,
            lower: seq.lower,
            upper: seq.upper,
            dim: file.dim,
            count: file.vectors.len(),
            tol: tol.into(),
        });
        Ok(if ok { 0 } else { 3 })
    }
}

fn cmd_reconstruct(cli: &Cli, path: &Path, signal: &Path) -> Result<u8, Error> {
    let file = io::read_family(path)?;
    let tol = effective_tolerances(cli, Some(&file));
    let signal_file = io::read_family(signal)?;
    let u = signal_file.signal_vector()?;
    if u.dim() != file.dim {
        return Err(Error::DimensionMismatch(format!(
            "signal has dim {}, family has dim {}",
            u.dim(),
            file.dim
        )));
    }
    match riesz::dual_riesz(&file.vectors, &tol) {
        Ok(dual) => {
            let (primary, swapped) = riesz::reconstruct(&file.vectors, &dual, &u)?;
            emit(&ReconstructDoc {
                dim: file.dim,
                residual_primary: primary.sub(&u)?.norm(),
                residual_swapped: swapped.sub(&u)?.norm(),
                tol: tol.into(),
            });
            Ok(0)
        }
        Err(Error::NotRieszBasis { tags }) => {
            emit(&NotBasisDoc {
                riesz_basis: false,
                failures: tags,
                tol: tol.into(),
            });
            Ok(3)
        }
        Err(e) => Err(e),
    }
}

fn cmd_gen(
    cli: &Cli,
    dim: usize,
    count: usize,
    kind: KindArg,
    seed_arg: u64,
    out: Option<&Path>,
    condition_cap: f64,
) -> Result<u8, Error> {
    let seed = match std::env::var("QFRAMES_SEED") {
        Ok(s) => s.trim().parse::<u64>().map_err(|_| {
            Error::InvalidConfig(format!(
                "QFRAMES_SEED must be an unsigned integer, got {s:?}"
            ))
        })?,
        Err(_) => seed_arg,
    };
    let cfg = GenConfig {
        seed,
        dim,
        count,
        kind: kind.into(),
        condition_cap,
    };
    let tol = effective_tolerances(cli, None);
    let fam = gen::gen_family(&cfg, &tol)?;
    let file = io::family_to_file(&fam);
    let text = io::canonical_json(&file);
    if let Some(out_path) = out {
        fs::write(out_path, &text)?;
    }
    print!("{text}");
    Ok(0)
}
