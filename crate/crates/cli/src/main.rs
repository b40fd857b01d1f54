mod commands;
mod report;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use commands::{CliError, Output};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    Real,
    Unit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BaseArg {
    Star,
    Cross,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

/// Exact checks for the quantum orthogonal groups SO_q(N), their real forms and quantum planes.
///
/// Conjugation specs use the grammar
/// `base:star|cross;autos:canonical[,dprime:<signs>][,dsecond:<signs>];regime:real|unit`
/// where <signs> is a string of N characters `+` or `-`. The `autos` and
/// `regime` parts are optional; the regime defaults to the one the base requires.
#[derive(Debug, Parser)]
#[command(name = "qortho", version, verbatim_doc_comment)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, env = "QORTHO_FORMAT", value_enum, default_value = "text")]
    format: Format,

    /// Allow N above the default cap of 12 for the heavy commands.
    #[arg(long, global = true)]
    force: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
pub struct NArg {
    /// Dimension N of the defining representation (N >= 3).
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build rho, the metric C and the R-matrix.
    Rmat(NArg),
    /// Check the Yang-Baxter equation.
    Ybe(NArg),
    /// Build the projectors and check their algebra and the cubic equation.
    Projectors(NArg),
    /// Classify one conjugation.
    Classify {
        #[command(flatten)]
        n: NArg,
        #[arg(long, value_enum)]
        regime: RegimeArg,
        /// Defaults to `star` for real q and `cross` for |q| = 1.
        #[arg(long, value_enum)]
        base: Option<BaseArg>,
        /// Comma-separated automorphisms, e.g. `canonical,dprime:-++-`.
        #[arg(long)]
        autos: Option<String>,
    },
    /// Full real-form table.
    Table {
        #[command(flatten)]
        n: NArg,
        #[arg(long, value_enum)]
        regime: RegimeArg,
    },
    /// Quantum plane relations and their confluence.
    Plane {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        relations: bool,
        #[arg(long)]
        confluence: bool,
    },
    /// Conjugation of the quantum plane induced by a conjugation spec.
    PlaneConj {
        #[command(flatten)]
        n: NArg,
        #[arg(long)]
        spec: String,
        /// Check that the conjugation preserves the relations and is involutive.
        #[arg(long)]
        check: bool,
    },
    /// Three-dimensional subplanes of the four-dimensional plane.
    Quotient {
        #[arg(long, value_enum)]
        sign: SignArg,
        /// Leave out the factor t in the image of y^2.
        #[arg(long)]
        unscaled: bool,
    },
    /// Run every identity check for one N.
    VerifyAll(NArg),
}

fn run(cli: &Cli) -> Result<Output, CliError> {
    let force = cli.force;
    match &cli.command {
        Command::Rmat(a) => commands::rmat(a.n),
        Command::Ybe(a) => commands::ybe(a.n, force),
        Command::Projectors(a) => commands::projectors(a.n),
        Command::Classify { n, regime, base, autos } => commands::classify(n.n, *regime, *base, autos.as_deref()),
        Command::Table { n, regime } => commands::table(n.n, *regime),
        Command::Plane {
            n,
            relations,
            confluence,
        } => commands::plane(n.n, *relations, *confluence),
        Command::PlaneConj { n, spec, check } => commands::plane_conj(n.n, spec, *check),
        Command::Quotient { sign, unscaled } => commands::quotient(*sign, *unscaled),
        Command::VerifyAll(a) => commands::verify_all(a.n, force),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = match (cli.format, &out) {
                (Format::Json, Output::Report(r)) => serde_json::to_string_pretty(r).expect("report serializes"),
                (Format::Json, Output::Table(rows)) => serde_json::to_string_pretty(rows).expect("table serializes"),
                (Format::Text, Output::Report(r)) => r.to_text(),
                (Format::Text, Output::Table(rows)) => report::table_text(rows),
            };
            println!("{}", text.trim_end());
            if out.pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
