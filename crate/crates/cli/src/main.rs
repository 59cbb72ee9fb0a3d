mod commands;
mod error;

use clap::{Args, Parser, Subcommand, ValueEnum};
use error::{CliError, EXIT_OK, EXIT_USAGE};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const FORMATS: &str = "\
File formats (all indices 1-based):
  Cartan datum   {\"C\": [[2,-1],[-1,2]], \"D\": [1,1], \"Omega\": [[1,2]]}
                 each (i,j) in Omega must have i < j; arrows run j -> i
  Rank vectors   comma-separated, e.g. --rank 1,2,2
  Modules        {\"dims\": [..], \"eps\": {\"i\": rows}, \"arrows\": {\"i,j,g\": rows}, \"p\": 32003}
  Strings        letters e1 a12 a23 e3, inverse with trailing '-', trivial 1_v
Bounds are coordinate boxes: a root b is inside bound B when max|b_i| <= B.
Exit codes: 0 ok, 2 validation error, 3 not found / atlas incomplete, 64 usage.
The environment variable SCHUR_LATTICE_SEED overrides --seed.";

#[derive(Parser, Debug)]
#[command(name = "schur-lattice", version, about = "Real Schur roots, locally free modules and exchange graphs for symmetrizable Cartan data")]
#[command(after_help = FORMATS)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Prime field size
    #[arg(long, global = true, default_value_t = 32003)]
    pub p: u64,
    /// Random seed for module sampling
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Sampling attempts per rank vector
    #[arg(long, global = true, default_value_t = 32)]
    pub tries: usize,
    /// Worker threads; values above 1 enable the parallel code paths
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Largest accepted Cartan rank
    #[arg(long, global = true, default_value_t = 8)]
    pub max_rank: usize,
    /// Emit errors as JSON objects on stdout
    #[arg(long, global = true)]
    pub json: bool,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cartan data files
    #[command(subcommand)]
    Cartan(CartanCmd),
    /// Real roots, Schur roots and dual roots
    #[command(subcommand)]
    Roots(RootsCmd),
    /// Locally free modules over H
    #[command(subcommand)]
    Module(ModuleCmd),
    /// Support tilting pairs
    #[command(subcommand)]
    Tilting(TiltingCmd),
    /// The gentle algebra of type C~2
    #[command(subcommand)]
    Gentle(GentleCmd),
    /// Reproduce the worked examples
    #[command(subcommand)]
    Repro(ReproCmd),
}

#[derive(Subcommand, Debug)]
pub enum CartanCmd {
    /// Check a datum and print its normalized form
    Validate {
        #[arg(long)]
        cartan: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
pub enum RootsCmd {
    /// Real roots inside the coordinate box
    Real {
        #[arg(long)]
        cartan: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: i64,
    },
    /// Real Schur roots inside the coordinate box
    Schur {
        #[arg(long)]
        cartan: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        #[arg(long, value_enum, default_value_t = SchurMethod::Braid)]
        method: SchurMethod,
    },
    /// Dual roots, for one root or for every Schur root within the bound
    Dual {
        #[arg(long)]
        cartan: PathBuf,
        #[arg(long, default_value_t = 3)]
        bound: i64,
        /// A single root, e.g. 1,2,2
        #[arg(long)]
        root: Option<String>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchurMethod {
    /// Braid group orbit of the standard exceptional sequence
    Braid,
    /// Absolute order below the Coxeter element (finite type only)
    Absolute,
}

#[derive(Subcommand, Debug)]
pub enum ModuleCmd {
    /// Sample a generic rigid locally free module of the given rank
    Rigid {
        #[arg(long)]
        cartan: PathBuf,
        #[arg(long)]
        rank: String,
    },
    /// dim Hom(M, N)
    Hom {
        #[arg(long)]
        cartan: PathBuf,
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: PathBuf,
    },
    /// dim Ext^1(M, N)
    Ext {
        #[arg(long)]
        cartan: PathBuf,
        #[arg(long)]
        m: PathBuf,
        #[arg(long)]
        n: PathBuf,
        #[arg(long, value_enum, default_value_t = ExtMethod::Resolution)]
        method: ExtMethod,
    },
    /// Structure of End(M)
    End {
        #[arg(long)]
        cartan: PathBuf,
        #[arg(long)]
        m: PathBuf,
    },
    /// The brick M / rad_E(M)
    Brick {
        #[arg(long)]
        cartan: PathBuf,
        #[arg(long)]
        m: PathBuf,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExtMethod {
    /// Projective resolution complex
    Resolution,
    /// dim Hom minus the Euler form (locally free modules only)
    Euler,
}

#[derive(Subcommand, Debug)]
pub enum TiltingCmd {
    /// Exchange graph of support tilting pairs (finite type)
    Graph {
        #[arg(long)]
        cartan: PathBuf,
        /// Output format; defaults to the --out extension, else json
        #[arg(long, value_enum)]
        format: Option<GraphFormat>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
pub enum GentleCmd {
    /// The C~2 gentle algebra
    #[command(subcommand)]
    C2(C2Cmd),
}

#[derive(Subcommand, Debug)]
pub enum C2Cmd {
    /// tau-orbits of projectives (minus) or injectives (plus)
    Tau {
        #[arg(long, value_enum)]
        dir: Dir,
        /// Vertex 1, 2 or 3
        #[arg(long)]
        vertex: usize,
        #[arg(long, default_value_t = 5)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Emit::Strings)]
        emit: Emit,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Dir {
    Minus,
    Plus,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Ranks,
    Strings,
    Modules,
}

#[derive(Subcommand, Debug)]
pub enum ReproCmd {
    /// The B3 example: Schur roots, duals, atlas, bricks and exchange graph
    B3,
    /// The C~2 example: preprojective ranks and brick dimensions
    C2 {
        #[arg(long, default_value_t = 5)]
        steps: usize,
    },
}

fn report(err: &CliError, json: bool) {
    if json {
        println!("{}", err.to_json());
    } else {
        eprintln!("error: {err}");
    }
}

/// Runs the CLI on `argv` and returns the process exit code.
pub fn run(argv: Vec<OsString>) -> i32 {
    let json = argv.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return EXIT_OK;
            }
            if json {
                let rendered = e.render().to_string();
                let first = rendered.lines().next().unwrap_or_default();
                report(&CliError::Usage(first.trim_start_matches("error: ").to_string()), true);
            } else {
                let _ = e.print();
            }
            return EXIT_USAGE;
        }
    };
    match commands::execute(cli) {
        Ok(()) => {
            let _ = std::io::stdout().flush();
            EXIT_OK
        }
        Err(e) => {
            report(&e, json);
            e.exit_code()
        }
    }
}

fn main() -> ExitCode {
    let code = run(std::env::args_os().collect());
    ExitCode::from(code as u8)
}
