use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "fourfold", version, about = "Curvature functionals, gluing, Schottky limit sets and 4-manifold invariants")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Write the result here instead of stdout (atomically).
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,

    #[arg(long, value_enum, global = true)]
    format: Option<Format>,

    /// Run the engine's invariant suite instead of the command.
    #[arg(long, global = true)]
    selftest: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Pointwise curvature decomposition at sample points of a zoo entry.
    Curvature {
        #[arg(required_unless_present = "selftest")]
        entry: Option<String>,
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        reversed: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Euler characteristic from the Gauss–Bonnet integral.
    GaussBonnet {
        #[arg(required_unless_present = "selftest")]
        entry: Option<String>,
        #[arg(long)]
        reversed: bool,
        /// Multiply every quadrature axis by this factor.
        #[arg(long, default_value_t = 1)]
        refine: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Signature from the Hirzebruch integral.
    Signature {
        #[arg(required_unless_present = "selftest")]
        entry: Option<String>,
        #[arg(long)]
        reversed: bool,
        #[arg(long, default_value_t = 1)]
        refine: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Quadratic curvature integrals of a compact entry.
    Budget {
        #[arg(required_unless_present = "selftest")]
        entry: Option<String>,
        #[arg(long)]
        reversed: bool,
        #[arg(long, default_value_t = 1)]
        refine: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Glue an Eguchi–Hanson, Burns or wormhole insert into the round sphere.
    Glue {
        #[arg(long, value_parser = ["eh", "burns", "wormhole"], required_unless_present = "selftest")]
        kind: Option<String>,
        #[arg(long, default_value_t = 0.25)]
        rho: f64,
        /// Defaults to ρ² for ALE inserts and ρ⁴ for the wormhole.
        #[arg(long)]
        eps: Option<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Curvature budgets along a one-parameter family.
    Anorexic {
        #[arg(required_unless_present = "selftest")]
        family: Option<String>,
        #[arg(long, value_delimiter = ',', required_unless_present = "selftest")]
        params: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Nested disks of the Schottky group at parameter t.
    Limitset {
        #[arg(long, required_unless_present = "selftest")]
        t: Option<f64>,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Shorthand for `--format svg`.
        #[arg(long)]
        svg: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Dimension estimates over a grid of t.
    DimScan {
        #[arg(long, value_delimiter = ',', required_unless_present = "selftest")]
        t_grid: Vec<f64>,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Bisection for the t where the dimension estimate crosses 1.
    Crossing {
        #[arg(long, default_value_t = 0.5)]
        lo: f64,
        #[arg(long, default_value_t = 0.98)]
        hi: f64,
        #[arg(long, default_value_t = fourfold::schottky::CROSSING_DEPTH)]
        depth: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Invariants and optimal-metric verdict for a connected sum.
    Topology {
        #[arg(required_unless_present = "selftest")]
        expr: Option<String>,
        /// c₁² of a minimal general-type surface X, for M = X # ℓ ~CP2.
        #[arg(long, requires = "ell")]
        c1sq: Option<i64>,
        #[arg(long, requires = "c1sq")]
        ell: Option<i64>,
        #[command(flatten)]
        common: Common,
    },
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("FOURFOLD_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Failure::precondition("invalid-parameter", format!("FOURFOLD_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::numerical("thread-pool", e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| commands::run(cli.command));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let body = serde_json::json!({ "kind": f.kind, "message": f.message });
            eprintln!("{body}");
            ExitCode::from(f.code)
        }
    }
}
