use clap::{Parser, Subcommand, ValueEnum};

use hyperkn::cli::{self, Command, InputSource, OutputFormat, RunConfig};

/// Exact computation with punctured hyperelliptic curve algebras
/// C[t^±1, u : u² = p(t)]: automorphism groups, character tables, and the
/// decomposition of Kähler differentials modulo exact forms.
#[derive(Parser)]
#[command(
    name = "hyperkn",
    version,
    after_help = "Exit codes:\n  \
        0  success\n  \
        2  parse or configuration error\n  \
        3  invalid curve\n  \
        4  undetermined automorphism group (square root outside the field)\n  \
        5  internal consistency failure\n\n\
        Errors are also emitted as structured JSON on stderr.\n\
        HYPERKN_APPROX_DIGITS controls numeric display precision only."
)]
struct Args {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Detect and classify the automorphism group of a curve.
    Aut {
        /// Curve spec file (JSON), or `-` for stdin.
        input: String,
    },
    /// Conjugacy classes of a group family (cyclic | dihedral | dicyclic | u).
    Classes { family: String, param: u64 },
    /// Exact character table of a group family.
    Chartab { family: String, param: u64 },
    /// Action matrices of the automorphism generators on the differentials.
    Action { input: String },
    /// Full decomposition report with closed-form comparisons.
    Decompose { input: String },
    /// Emit the reduction tables for a curve.
    PqTable {
        input: String,
        /// Largest P-row exponent to materialize.
        #[arg(long, default_value_t = 6)]
        m_max: i64,
    },
    /// Run the built-in invariant suites at small parameters.
    Selftest,
}

fn main() {
    let args = Args::parse();
    let format = match args.format {
        FormatArg::Json => OutputFormat::Json,
        FormatArg::Text => OutputFormat::Text,
    };
    let command = match args.command {
        Cmd::Aut { input } => Command::Aut {
            input: InputSource::Path(input),
        },
        Cmd::Classes { family, param } => Command::Classes { family, param },
        Cmd::Chartab { family, param } => Command::Chartab { family, param },
        Cmd::Action { input } => Command::Action {
            input: InputSource::Path(input),
        },
        Cmd::Decompose { input } => Command::Decompose {
            input: InputSource::Path(input),
        },
        Cmd::PqTable { input, m_max } => Command::PqTable {
            input: InputSource::Path(input),
            m_max,
        },
        Cmd::Selftest => Command::Selftest,
    };
    match cli::run(&RunConfig { command, format }) {
        Ok(output) => print!("{output}"),
        Err(err) => {
            eprintln!("{}", err.to_json());
            std::process::exit(err.exit_code());
        }
    }
}
