//! `supervariety`: command-line front end for supervariety-core.
//!
//! Every command prints one JSON document on stdout. Exit codes: 0 success,
//! 1 failed verdict or internal error, 2 invalid input, 3 budget exceeded.

mod commands;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use supervariety_core::Error;

#[derive(Parser)]
#[command(
    name = "supervariety",
    version,
    about = "Odd nullcones, rank varieties and Ext over Lie superalgebras in odd characteristic",
    after_help = "Odd points are comma-separated residues in the order of the odd basis \
                  elements of the algebra file. The SUPERVARIETY_BUDGET environment variable \
                  overrides the point-enumeration budget (default 10000000)."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
pub struct AlgebraArg {
    /// Algebra JSON file
    pub algebra: PathBuf,
}

#[derive(Args)]
pub struct Window {
    /// Largest allowed start of the vanishing window
    #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
    pub window_start: u32,
    /// Number of consecutive vanishing degrees required
    #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
    pub window_len: u32,
}

#[derive(Subcommand)]
pub enum Command {
    /// Check the Lie superalgebra axioms, and the module axioms if a module is given
    Validate {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        module: Option<PathBuf>,
    },
    /// Print gl(m|n) in the algebra format, or its natural module
    MakeGl {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        p: u64,
        /// Print the natural module instead of the algebra
        #[arg(long)]
        natural: bool,
    },
    /// Quadrics and F_p-points of the odd nullcone {x : [x,x] = 0}
    Nullcone {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        points: bool,
        #[arg(long)]
        ideal: bool,
    },
    /// Nullcone points where the module is not free over Λ(x), plus 0
    RankVariety {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        module: Option<PathBuf>,
        /// Candidate points, one per line, instead of enumerating the nullcone
        #[arg(long)]
        point_file: Option<PathBuf>,
    },
    /// Whether the module is free over Λ(x), with a certificate basis
    FreeTest {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        point: String,
    },
    /// Dimensions of Ext^n(M, N) for n < max-degree (M = N = k by default)
    Cohomology {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        max_degree: u32,
        #[arg(long)]
        module: Option<PathBuf>,
        /// Second module; defaults to the first
        #[arg(long)]
        module2: Option<PathBuf>,
    },
    /// Smallest l <= lmax with φ(f^l)·id_M a coboundary
    PhiProbe {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        module: Option<PathBuf>,
        /// Polynomial in the odd coordinates, e.g. "E12 + 2*E21^2"
        #[arg(long)]
        poly: String,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        lmax: u32,
    },
    /// Compare Ext^n_g(M, N) with the E_1 totals from standard filtrations
    E1Check {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        module2: Option<PathBuf>,
        /// JSON list of homogeneous generators of M (default: the standard basis)
        #[arg(long)]
        gens: Option<PathBuf>,
        /// JSON list of homogeneous generators of N (default: the standard basis)
        #[arg(long)]
        gens2: Option<PathBuf>,
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        max_degree: u32,
    },
    /// Rank variety {0} versus vanishing of Ext(M, M) in a window
    SupportProbe {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        module: Option<PathBuf>,
        #[command(flatten)]
        window: Window,
        #[arg(long)]
        point_file: Option<PathBuf>,
    },
    /// Check X(M ⊗ N) = X(M) ∩ X(N) on F_p-points
    TensorCheck {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long)]
        module2: Option<PathBuf>,
        #[arg(long)]
        point_file: Option<PathBuf>,
    },
    /// Whether the odd nullcone is trivial over the algebraic closure
    GlobalDimProbe {
        #[command(flatten)]
        alg: AlgebraArg,
        #[command(flatten)]
        window: Window,
    },
    /// The odd matrix x_(r,s) of gl(m|n) in odd-basis coordinates
    OrbitRep {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        s: usize,
    },
    /// Clifford associated graded algebra, and of a module with a generating set
    AssocGraded {
        #[command(flatten)]
        alg: AlgebraArg,
        #[arg(long)]
        module: Option<PathBuf>,
        #[arg(long, requires = "module")]
        gens: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.report).expect("serializable");
            // a closed pipe is not worth a panic
            let _ = writeln!(std::io::stdout(), "{text}");
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Budget(_) => 3,
                Error::Internal(_) => 1,
                _ => 2,
            })
        }
    }
}
