//! Command-line front end: every computation prints deterministic text or
//! JSON on stdout; diagnostics go to stderr.

mod commands;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "grassmann", version, about = "Multigraded Hilbert series of G(2,n) and related combinatorics")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Worker threads for parallel sections (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The series W_n through a total degree.
    Series {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum, default_value_t = SeriesMethod::Recursion)]
        method: SeriesMethod,
    },
    /// The numerator F_n of W_n.
    Numerator {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        #[arg(long, value_enum)]
        method: NumeratorMethodArg,
        /// Tree whose unordered intersections form the exclusion set (ie only).
        #[arg(long)]
        tree: Option<String>,
    },
    /// Dimension of one graded piece.
    Dim {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        grading: Vec<u32>,
        #[arg(long, value_enum, default_value_t = DimMethod::Oracle)]
        method: DimMethod,
    },
    /// Canonical decomposition of an edge labelling into leaf paths.
    Decompose {
        #[arg(long)]
        tree: String,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required = true)]
        values: Vec<i64>,
    },
    /// Binomial relations of the toric degeneration of a tree.
    Relations {
        #[arg(long)]
        tree: String,
    },
    /// Verification suites.
    Verify(VerifyArgs),
    /// Built-in known numerators for n = 2..5.
    Fixtures,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(subcommand)]
    pub suite: Suite,
}

#[derive(Subcommand, Debug)]
pub enum Suite {
    /// Compare all methods coefficient by coefficient.
    Cross {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
        #[arg(long)]
        max_degree: u32,
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [MethodArg::Recursion, MethodArg::Ie, MethodArg::Sym, MethodArg::Oracle])]
        methods: Vec<MethodArg>,
        /// Number of random variable permutations for the symmetry checks.
        #[arg(long, default_value_t = 10)]
        permutations: usize,
        #[arg(long, default_value_t = 20)]
        seed: u64,
    },
    /// Riemann–Roch against the five-variable series on 220 divisors.
    Delpezzo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SeriesMethod {
    Recursion,
    Numerator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum NumeratorMethodArg {
    Ie,
    Sym,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DimMethod {
    Oracle,
    Series,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Recursion,
    Ie,
    Sym,
    Oracle,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global() {
            eprintln!("error: cannot set up {jobs} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
