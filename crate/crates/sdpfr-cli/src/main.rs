//! Command-line front end for the facial-reduction preprocessing library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sdpfr::io::cli::{self, CliConfig, Command, MethodSel, RelaxKind};
use sdpfr::Method;

#[derive(Parser)]
#[command(
    name = "sdpfr",
    about = "Facial-reduction preprocessing for SDP relaxations of mixed-binary programs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Read an MPS file, build a relaxation, reduce it and emit SDPA output
    Reduce(ReduceArgs),
    /// Print the affine hull of the constraint polyhedron of an MPS file
    Hull(HullArgs),
    /// Run the brute-force verification suite on seeded random instances
    Verify(VerifyArgs),
    /// Aggregate reduction statistics over a batch of instances (CSV)
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Affine,
    PfrD,
    PfrDd,
    Sieve,
    All,
}

impl MethodArg {
    fn to_sel(self) -> MethodSel {
        match self {
            MethodArg::Affine => MethodSel::One(Method::Affine),
            MethodArg::PfrD => MethodSel::One(Method::PfrD),
            MethodArg::PfrDd => MethodSel::One(Method::PfrDd),
            MethodArg::Sieve => MethodSel::One(Method::Sieve),
            MethodArg::All => MethodSel::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RelaxArg {
    Shor,
    Ls,
}

#[derive(Args)]
struct CommonArgs {
    /// Time limit per preprocessing LP, in seconds
    #[arg(long, default_value_t = 300.0)]
    lp_time_limit: f64,
    /// Relative tolerance for rank decisions
    #[arg(long, default_value_t = 1e-9)]
    tol_rank: f64,
    /// Feasibility tolerance
    #[arg(long, default_value_t = 1e-8)]
    tol_feas: f64,
}

#[derive(Args)]
struct ReduceArgs {
    /// Input MPS file
    input: PathBuf,
    /// Reduction method
    #[arg(long, value_enum, default_value = "all")]
    method: MethodArg,
    /// Relaxation to build
    #[arg(long, value_enum, default_value = "shor")]
    relaxation: RelaxArg,
    /// SDPA output path (.dat-s); with --method all the method name is
    /// inserted before the extension
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// JSON report path
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct HullArgs {
    /// Input MPS file
    input: PathBuf,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Number of seeded instances
    #[arg(long, default_value_t = 50)]
    instances: usize,
    /// Base seed
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct BenchArgs {
    /// Number of generated instances (ignored with --mps-dir)
    #[arg(long, default_value_t = 50)]
    instances: usize,
    /// Base seed for generated instances
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory of .mps files to bench instead of generated instances
    #[arg(long)]
    mps_dir: Option<PathBuf>,
    /// CSV output path (stdout when omitted)
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Worker threads (0 = library default)
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[command(flatten)]
    common: CommonArgs,
}

fn apply_common(cfg: &mut CliConfig, common: &CommonArgs) {
    cfg.lp_time_limit_seconds = common.lp_time_limit;
    cfg.tol_rank = common.tol_rank;
    cfg.tol_feas = common.tol_feas;
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match cli.command {
        Cmd::Reduce(a) => {
            let mut cfg = CliConfig::new(Command::Reduce);
            cfg.input_path = Some(a.input);
            cfg.method = a.method.to_sel();
            cfg.relaxation = match a.relaxation {
                RelaxArg::Shor => RelaxKind::Shor,
                RelaxArg::Ls => RelaxKind::Ls,
            };
            cfg.output_path = a.output;
            cfg.report_path = a.report;
            apply_common(&mut cfg, &a.common);
            cfg
        }
        Cmd::Hull(a) => {
            let mut cfg = CliConfig::new(Command::Hull);
            cfg.input_path = Some(a.input);
            apply_common(&mut cfg, &a.common);
            cfg
        }
        Cmd::Verify(a) => {
            let mut cfg = CliConfig::new(Command::Verify);
            cfg.instances = a.instances;
            cfg.seed = a.seed;
            apply_common(&mut cfg, &a.common);
            cfg
        }
        Cmd::Bench(a) => {
            let mut cfg = CliConfig::new(Command::Bench);
            cfg.instances = a.instances;
            cfg.seed = a.seed;
            cfg.mps_dir = a.mps_dir;
            cfg.output_path = a.output;
            cfg.jobs = a.jobs;
            apply_common(&mut cfg, &a.common);
            cfg
        }
    };
    ExitCode::from(cli::run_cli(&cfg) as u8)
}
