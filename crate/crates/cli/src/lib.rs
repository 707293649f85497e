//! `deltainv`: batch front end. Every subcommand prints one JSON document.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 usage error.

mod commands;
mod json;
pub mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use std::path::PathBuf;

pub use commands::parse_half_integer;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {msg}")]
    Io { path: String, msg: String },
}

impl CliError {
    pub(crate) fn usage(e: impl std::fmt::Display) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "deltainv",
    version,
    about = "Exact δ-invariant and Serre-Tate expansion computations"
)]
pub struct Cli {
    /// Seed for every random choice; overrides DELTA_INV_SEED.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the JSON document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Variant {
    Even,
    Grassmannian,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RelationKind {
    Cyclic,
    Plucker,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ExpandKind {
    Psi,
    Fr,
    Angle,
    Bracket,
    Partial,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum RankTarget {
    Pencil,
    Theta,
    Conjugation,
    PulledBack,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Delta,
    Quadratic,
    Conjugation,
    Expansions,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimension of the degree g·s invariants of (r+1)-tuples of g×g symmetric matrices.
    Dims {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        r: usize,
        /// Integer or half-integer, e.g. 2 or 1/2.
        #[arg(long)]
        s: String,
        #[arg(long, default_value_t = quad_invariants::DEFAULT_SLICE_CAP)]
        cap: usize,
    },
    /// Closed-form Hilbert series for g = 2.
    Hilbert {
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "even")]
        variant: Variant,
        #[arg(long, default_value_t = 5)]
        terms: usize,
        /// Also compute the Plücker span dimensions by brute force.
        #[arg(long)]
        brute_force: bool,
    },
    /// The partial polarizations Θ_m for all multidegrees m.
    Theta {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        r: usize,
    },
    /// Υ for strictly increasing levels.
    Upsilon {
        #[arg(long)]
        g: usize,
        #[arg(long, value_delimiter = ',')]
        levels: Vec<usize>,
    },
    /// The lift Ξ_ω of a cyclic product of Plücker coordinates.
    Xi {
        #[arg(long, value_delimiter = ',')]
        levels: Vec<usize>,
    },
    /// Cyclic and Plücker relations among the Ξ and Θ.
    Relations {
        #[arg(long, value_enum)]
        kind: RelationKind,
        #[arg(long, value_delimiter = ',')]
        levels: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        s: usize,
    },
    /// Serre-Tate expansion of a basic form.
    Expand {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        prec: u32,
        #[arg(long)]
        deg: u32,
        #[arg(long, value_enum, default_value = "psi")]
        kind: ExpandKind,
        #[arg(long, default_value_t = 1)]
        index: u16,
    },
    /// F^♦ for F = Θ_m (or det T), with its lowest homogeneous part.
    Diamond {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        prec: u32,
        #[arg(long)]
        deg: u32,
        /// Multidegree of Θ; defaults to det T.
        #[arg(long, value_delimiter = ',')]
        multidegree: Option<Vec<usize>>,
    },
    /// Generic Jacobian rank of a family, at random points over F_{2^31−1}.
    Rank {
        #[arg(long, value_enum)]
        kind: RankTarget,
        #[arg(long)]
        g: usize,
        /// Number of matrices (theta: r + 1).
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        points: usize,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
    },
    /// Solution counts of the b0 system over F_q.
    B0 {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        q: u64,
        #[arg(long, default_value_t = 500)]
        trials: usize,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value_t = 2)]
        prec: u32,
        #[arg(long, default_value_t = 4)]
        deg: u32,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Dims { .. } => "dims",
            Command::Hilbert { .. } => "hilbert",
            Command::Theta { .. } => "theta",
            Command::Upsilon { .. } => "upsilon",
            Command::Xi { .. } => "xi",
            Command::Relations { .. } => "relations",
            Command::Expand { .. } => "expand",
            Command::Diamond { .. } => "diamond",
            Command::Rank { .. } => "rank",
            Command::B0 { .. } => "b0",
            Command::Verify { .. } => "verify",
        }
    }
}

/// What a run produced: the result object and whether it certifies success.
pub struct Report {
    pub result: Value,
    pub source: &'static str,
    pub passed: bool,
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64, CliError> {
    match (flag, env) {
        (Some(s), _) => Ok(s),
        (None, Some(s)) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("DELTA_INV_SEED={s:?} is not a u64"))),
        (None, None) => Ok(0),
    }
}

/// Renders the full document for a parsed command line.
pub fn execute(
    cli: &Cli,
    argv: &[String],
    env_seed: Option<&str>,
) -> Result<(String, bool), CliError> {
    let seed = resolve_seed(cli.seed, env_seed)?;
    let report = commands::dispatch(&cli.command, seed)?;
    let body = serde_json::to_string(&report.result).expect("values serialize");
    let digest = format!("{:x}", Sha256::digest(body.as_bytes()));
    let doc = json!({
        "command": cli.command.name(),
        "passed": report.passed,
        "result": report.result,
        "source": report.source,
        "manifest": {
            "argv": argv.get(1..).unwrap_or(&[]),
            "seed": seed,
            "version": env!("CARGO_PKG_VERSION"),
            "result_sha256": digest,
        },
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("values serialize");
    text.push('\n');
    Ok((text, report.passed))
}

pub fn run(args: impl IntoIterator<Item = String>, env_seed: Option<&str>) -> Outcome {
    let argv: Vec<String> = args.into_iter().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match execute(&cli, &argv, env_seed) {
        Ok((text, passed)) => {
            let code = if passed { 0 } else { 1 };
            match &cli.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => Outcome {
                        code,
                        stdout: String::new(),
                        stderr: String::new(),
                    },
                    Err(e) => Outcome {
                        code: 2,
                        stdout: String::new(),
                        stderr: format!(
                            "{}\n",
                            CliError::Io {
                                path: path.display().to_string(),
                                msg: e.to_string()
                            }
                        ),
                    },
                },
                None => Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                },
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
