//! Command-line front end: construct and verify designs, MUB families,
//! realizations, and reconstruction bases; run exhaustive and sampled
//! verification of the retrodiction game.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use meanking::designs::{affine_plane, hadamard_design, sylvester_hadamard};
use meanking::functions::functions_from_plane;
use meanking::json;
use meanking::mub::MubFamily;
use meanking::protocol::{run_game, verify_exhaustive, KingModelKind};
use meanking::realization::Realization;
use meanking::reconstruction::{psi_function_basis, psi_point_basis, ReconstructionBasis};
use meanking::{Error, TOL};

#[derive(Parser)]
#[command(name = "meanking", version, about = "Designs, MUBs, and retrodiction games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct or verify block designs
    Design {
        #[command(subcommand)]
        kind: DesignCommand,
    },
    /// Emit or check a family of mutually unbiased bases
    Mub {
        /// Dimension q (2 or an odd prime power up to 81)
        #[arg(long)]
        q: u64,
        /// Print the worst deviations instead of the family
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Emit a realization (block vectors) of a design
    Realize {
        #[command(subcommand)]
        kind: RealizeCommand,
    },
    /// Emit a reconstruction basis
    Basis {
        #[command(subcommand)]
        kind: BasisCommand,
    },
    /// Exhaustively verify a scenario: every measurement, every branch
    Verify {
        #[arg(long, value_enum)]
        scenario: Scenario,
        /// Plane order for the affine and function scenarios
        #[arg(long, default_value_t = 2)]
        order: u64,
    },
    /// Stream seeded game transcripts as JSON lines
    Simulate {
        #[arg(long, value_enum)]
        scenario: Scenario,
        /// Plane order for the affine and function scenarios
        #[arg(long, default_value_t = 2)]
        order: u64,
        /// Base seed; trial t plays with seed + t
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        trials: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand)]
enum DesignCommand {
    /// The affine plane AG(2,q)
    AffinePlane {
        #[arg(long)]
        order: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The affine design read off the Sylvester matrix H_(2^k)
    Hadamard {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Re-verify a design artifact: parameters, resolution, affine relations
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Subcommand)]
enum RealizeCommand {
    /// Normalized incidence vectors of a plane or Hadamard design
    Incidence {
        #[arg(long, conflicts_with = "hadamard_k", required_unless_present = "hadamard_k")]
        order: Option<u64>,
        #[arg(long)]
        hadamard_k: Option<u32>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// MUB tensor vectors for an affine plane
    Mub {
        #[arg(long)]
        order: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// The explicit three-qubit system for the order-8 Hadamard design
    Hadamard8 {
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Subcommand)]
enum BasisCommand {
    /// Point-indexed basis from an incidence realization (or the
    /// three-qubit realization with --hadamard8)
    Point {
        #[arg(long, conflicts_with_all = ["hadamard_k", "hadamard8"])]
        order: Option<u64>,
        #[arg(long, conflicts_with = "hadamard8")]
        hadamard_k: Option<u32>,
        #[arg(long)]
        hadamard8: bool,
        /// Parallel class used in the construction (the result is
        /// class-independent)
        #[arg(long, default_value_t = 0)]
        class: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Function-indexed basis over the MUB family of a plane
    Function {
        #[arg(long)]
        order: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Scenario {
    /// Abstract collapse on an incidence-realized affine plane, point basis
    Affine,
    /// Single-qubit measurements on the three-qubit system, point basis
    Hadamard8,
    /// First-factor MUB measurements on a plane, function basis
    Function,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Write to a file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

impl OutputArgs {
    fn write(&self, content: &str) -> std::io::Result<()> {
        match &self.out {
            Some(path) => fs::write(path, content),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(content.as_bytes())
            }
        }
    }
}

/// Usage errors exit 2, verification failures exit 1.
fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::NotPrime(_)
        | Error::FieldTooLarge(_, _)
        | Error::NotPrimePower(_)
        | Error::ElementOutOfRange(_, _)
        | Error::BinomialRange { .. }
        | Error::BadHadamardOrder(_)
        | Error::UnsupportedMubDimension(_)
        | Error::ClassOutOfRange(_, _)
        | Error::ModelMismatch(_) => 2,
        _ => 1,
    }
}

fn scenario_setup(
    scenario: Scenario,
    order: u64,
) -> Result<(Realization, ReconstructionBasis, KingModelKind), Error> {
    match scenario {
        Scenario::Affine => {
            let (design, res) = affine_plane(order)?;
            let real = Realization::incidence(design, res)?;
            let basis = psi_point_basis(&real, 0)?;
            Ok((real, basis, KingModelKind::Abstract))
        }
        Scenario::Hadamard8 => {
            let real = Realization::hadamard8();
            let basis = psi_point_basis(&real, 0)?;
            Ok((real, basis, KingModelKind::QubitLocal))
        }
        Scenario::Function => {
            let (plane, res) = affine_plane(order)?;
            let fs = functions_from_plane(&plane, &res)?;
            let mubs = MubFamily::build(order)?;
            let basis = psi_function_basis(&mubs, &fs)?;
            let real = Realization::from_mub(plane, res, mubs)?;
            Ok((real, basis, KingModelKind::MubFactor))
        }
    }
}

fn pretty(value: impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(&value).expect("serializable artifact");
    s.push('\n');
    s
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Design { kind } => match kind {
            DesignCommand::AffinePlane { order, out } => {
                let (design, res) = affine_plane(order)?;
                out.write(&pretty(json::design_json(&design, Some(&res), Some(order))))
                    .map_err(|e| Error::BadArtifact(e.to_string()))?;
                Ok(0)
            }
            DesignCommand::Hadamard { k, out } => {
                let (design, res) = hadamard_design(&sylvester_hadamard(k)?)?;
                out.write(&pretty(json::design_json(&design, Some(&res), None)))
                    .map_err(|e| Error::BadArtifact(e.to_string()))?;
                Ok(0)
            }
            DesignCommand::Verify { input } => {
                let raw = fs::read_to_string(&input)
                    .map_err(|e| Error::BadArtifact(format!("{}: {e}", input.display())))?;
                let (design, res) = json::design_from_json(&raw)?;
                let p = design.params();
                println!(
                    "design ok: (v,b,r,k,lambda) = ({},{},{},{},{})",
                    p.v, p.b, p.r, p.k, p.lambda
                );
                let res = match res {
                    Some(res) => res,
                    None => design.find_resolution()?,
                };
                println!("resolvable: {} parallel classes", res.classes().len());
                let report = design.affine_resolvable_check(&res)?;
                println!(
                    "affine: m = {:?}, relations hold = {}",
                    report.m,
                    report.all_hold()
                );
                Ok(if report.all_hold() { 0 } else { 1 })
            }
        },
        Command::Mub { q, check, out } => {
            let fam = MubFamily::build(q)?;
            if check {
                let report = fam.verify();
                println!(
                    "bases: {}, orthonormality deviation: {:.3e}, unbiasedness deviation: {:.3e}",
                    fam.bases().len(),
                    report.orthonormality_deviation,
                    report.unbiasedness_deviation
                );
                Ok(if report.passes(TOL) { 0 } else { 1 })
            } else {
                out.write(&pretty(json::mub_json(&fam)))
                    .map_err(|e| Error::BadArtifact(e.to_string()))?;
                Ok(0)
            }
        }
        Command::Realize { kind } => {
            let (real, order, out) = match kind {
                RealizeCommand::Incidence { order: Some(q), out, .. } => {
                    let (design, res) = affine_plane(q)?;
                    (Realization::incidence(design, res)?, Some(q), out)
                }
                RealizeCommand::Incidence { hadamard_k: Some(k), out, .. } => {
                    let (design, res) = hadamard_design(&sylvester_hadamard(k)?)?;
                    (Realization::incidence(design, res)?, None, out)
                }
                RealizeCommand::Incidence { .. } => {
                    unreachable!("clap enforces order xor hadamard_k")
                }
                RealizeCommand::Mub { order, out } => {
                    let (plane, res) = affine_plane(order)?;
                    let mubs = MubFamily::build(order)?;
                    (Realization::from_mub(plane, res, mubs)?, Some(order), out)
                }
                RealizeCommand::Hadamard8 { out } => (Realization::hadamard8(), None, out),
            };
            out.write(&pretty(json::realization_json(&real, order)))
                .map_err(|e| Error::BadArtifact(e.to_string()))?;
            Ok(0)
        }
        Command::Basis { kind } => match kind {
            BasisCommand::Point { order, hadamard_k, hadamard8, class, out } => {
                let (real, order) = if hadamard8 {
                    (Realization::hadamard8(), None)
                } else if let Some(k) = hadamard_k {
                    let (design, res) = hadamard_design(&sylvester_hadamard(k)?)?;
                    (Realization::incidence(design, res)?, None)
                } else if let Some(q) = order {
                    let (design, res) = affine_plane(q)?;
                    (Realization::incidence(design, res)?, Some(q))
                } else {
                    return Err(Error::BadArtifact(
                        "one of --order, --hadamard-k, --hadamard8 is required".into(),
                    ));
                };
                let basis = psi_point_basis(&real, class)?;
                out.write(&pretty(json::basis_json(&basis, &real, order)))
                    .map_err(|e| Error::BadArtifact(e.to_string()))?;
                Ok(0)
            }
            BasisCommand::Function { order, out } => {
                let (plane, res) = affine_plane(order)?;
                let fs = functions_from_plane(&plane, &res)?;
                let mubs = MubFamily::build(order)?;
                let basis = psi_function_basis(&mubs, &fs)?;
                let real = Realization::from_mub(plane, res, mubs)?;
                out.write(&pretty(json::basis_json(&basis, &real, Some(order))))
                    .map_err(|e| Error::BadArtifact(e.to_string()))?;
                Ok(0)
            }
        },
        Command::Verify { scenario, order } => {
            let (real, basis, kind) = scenario_setup(scenario, order)?;
            let report = verify_exhaustive(&real, &basis, kind)?;
            if report.all_correct() {
                println!(
                    "{} branches verified, 0 failures: success probability = 1",
                    report.branches
                );
                Ok(0)
            } else {
                let f = &report.failures[0];
                println!(
                    "{} of {} branches FAILED; first: {:?} collapsed to block {} but {} was predicted from outcome {}",
                    report.failures.len(),
                    report.branches,
                    f.measurement,
                    f.king_block,
                    f.predicted_block,
                    f.alice_index
                );
                Ok(1)
            }
        }
        Command::Simulate { scenario, order, seed, trials, out } => {
            let (real, basis, kind) = scenario_setup(scenario, order)?;
            let mut lines = String::new();
            for t in 0..trials {
                let transcript = run_game(&real, &basis, kind, seed.wrapping_add(t))?;
                lines.push_str(&serde_json::to_string(&transcript).expect("serializable"));
                lines.push('\n');
            }
            out.write(&lines).map_err(|e| Error::BadArtifact(e.to_string()))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}
