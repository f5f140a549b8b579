use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use mstack_core::ring::Convention;

mod run;

#[derive(Parser, Debug)]
#[command(name = "mstack", version, about = "Exact invariants of moduli stacks of vector bundles on curves over F_q")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    Moduli,
    Bgl,
    Bgm,
    Bsl,
    Grassmannian,
    OpenCurve,
    Picard,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Generators,
    Recursion,
    Grassmann,
    Lefschetz,
    TraceOracle,
    Errata,
    All,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Generators => "generators",
            Suite::Recursion => "recursion",
            Suite::Grassmann => "grassmann",
            Suite::Lefschetz => "lefschetz",
            Suite::TraceOracle => "trace-oracle",
            Suite::Errata => "errata",
            Suite::All => "all",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Poincare series of a preset ring, from generators and closed form.
    Poincare(PoincareArgs),
    /// Formal trace of phi^r x psi^s on the trivial-determinant moduli stack.
    Trace(TraceArgs),
    /// Semistable series from the Harder-Narasimhan recursion.
    Ss(SeriesArgs),
    /// Coarse moduli Poincare series (gcd(n, d) = 1).
    Coarse(CoarseArgs),
    /// Harder-Narasimhan types up to a codimension bound.
    Strata(StrataArgs),
    /// Groupoid mass of degree-0 bundles on the projective line.
    Mass(MassArgs),
    /// Run an identity-check suite.
    Verify(VerifyArgs),
    /// Fixed-point mismatch table on the projective line.
    Demo(DemoArgs),
}

#[derive(Args, Debug)]
pub struct CurveArgs {
    /// Genus of the curve.
    #[arg(short = 'g', long, default_value_t = 0)]
    pub genus: u32,
    /// Size of the ground field.
    #[arg(short = 'q', default_value_t = 2)]
    pub q: u64,
    /// L-polynomial coefficients c0,c1,...,c2g (default (1 + q t^2)^g).
    #[arg(long = "l-poly", value_delimiter = ',', allow_hyphen_values = true)]
    pub l_poly: Option<Vec<i64>>,
}

#[derive(Args, Debug)]
pub struct PoincareArgs {
    #[arg(long, value_enum, default_value_t = Preset::Moduli)]
    pub preset: Preset,
    #[arg(short = 'n', long, default_value_t = 2)]
    pub rank: u32,
    #[arg(short = 'g', long, default_value_t = 0)]
    pub genus: u32,
    #[arg(short = 'k', long, default_value_t = 40)]
    pub order: usize,
    #[arg(long, default_value_t = Convention::SignFixed)]
    pub convention: Convention,
}

#[derive(Args, Debug)]
pub struct TraceArgs {
    #[arg(short = 'n', long)]
    pub rank: u32,
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(short = 'r', default_value_t = 0)]
    pub r: u32,
    #[arg(short = 's', default_value_t = 1)]
    pub s: u32,
    #[arg(long, default_value_t = Convention::SignFixed)]
    pub convention: Convention,
    /// Also enumerate monomials up to this degree and bound the tail.
    #[arg(long)]
    pub brute: Option<u32>,
}

#[derive(Args, Debug)]
pub struct SeriesArgs {
    #[arg(short = 'n', long)]
    pub rank: u32,
    #[arg(short = 'd', long, allow_negative_numbers = true)]
    pub degree: i64,
    #[arg(short = 'g', long, default_value_t = 0)]
    pub genus: u32,
    #[arg(short = 'k', long, default_value_t = 40)]
    pub order: usize,
}

#[derive(Args, Debug)]
pub struct CoarseArgs {
    #[command(flatten)]
    pub series: SeriesArgs,
    /// Trivial-determinant moduli instead of the full coarse space.
    #[arg(long)]
    pub fixed_det: bool,
}

#[derive(Args, Debug)]
pub struct StrataArgs {
    #[arg(short = 'n', long)]
    pub rank: u32,
    #[arg(short = 'd', long, allow_negative_numbers = true)]
    pub degree: i64,
    #[arg(short = 'g', long, default_value_t = 0)]
    pub genus: u32,
    #[arg(long, default_value_t = 6, allow_negative_numbers = true)]
    pub max_codim: i64,
}

#[derive(Args, Debug)]
pub struct MassArgs {
    #[arg(short = 'n', long)]
    pub rank: u32,
    #[arg(short = 'q', default_value_t = 2)]
    pub q: u64,
    #[arg(long, default_value_t = 40)]
    pub height: i64,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[arg(short = 'k', long, default_value_t = 40)]
    pub order: usize,
    /// With `lefschetz`: check a single rank instead of the whole suite.
    #[arg(short = 'n', long)]
    pub rank: Option<u32>,
    /// With `lefschetz --rank`: the field size.
    #[arg(short = 'q', default_value_t = 2)]
    pub q: u64,
    /// With `lefschetz --rank`: enumeration height.
    #[arg(long, default_value_t = 60)]
    pub height: i64,
}

#[derive(Args, Debug)]
pub struct DemoArgs {
    #[arg(short = 'q', default_value_t = 2)]
    pub q: u64,
    #[arg(short = 's', default_value_t = 2)]
    pub s: u32,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match &cli.command {
        Command::Poincare(a) => run::poincare(a),
        Command::Trace(a) => run::trace(a),
        Command::Ss(a) => run::ss(a),
        Command::Coarse(a) => run::coarse(a),
        Command::Strata(a) => run::strata(a),
        Command::Mass(a) => run::mass(a),
        Command::Verify(a) => run::verify(a),
        Command::Demo(a) => run::demo(a),
    };
    match result {
        Ok(report) => {
            match cli.format {
                Format::Text => print!("{}", report.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&report.json).expect("report serializes")
                ),
            }
            match report.verified {
                Some(false) => ExitCode::from(3),
                _ => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
