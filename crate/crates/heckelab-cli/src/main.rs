use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use heckelab::rootdata::RootKind;
use heckelab_cli::report::{self, CharArg, QArg};
use heckelab_cli::{cmd_tables, cmd_verify, diagram, parse_kinds, CliError, Suite};

#[derive(Parser)]
#[command(name = "heckelab", version, about = "Principal series of rank-one and rank-two affine Hecke algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
#[group(required = true, multiple = false)]
struct CharacterArgs {
    /// Simple-root values, e.g. "a1=q^2,a2=z" (A1: "w1=<expr>").
    #[arg(long)]
    weight: Option<String>,
    /// Inventory name, e.g. "t_{q^2,1}".
    #[arg(long = "char")]
    char_name: Option<String>,
}

impl CharacterArgs {
    fn get(&self) -> CharArg {
        match (&self.weight, &self.char_name) {
            (Some(w), _) => CharArg::Values(w.clone()),
            (None, Some(c)) => CharArg::Name(c.clone()),
            (None, None) => unreachable!("clap enforces one of --weight/--char"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Composition factors of M(t), as a JSON report.
    Decompose {
        #[arg(long = "type")]
        kind: RootKind,
        #[arg(long, default_value = "generic")]
        q: QArg,
        #[command(flatten)]
        character: CharacterArgs,
        /// Which lift of the root-lattice values to the weight lattice.
        #[arg(long, default_value_t = 0)]
        lift: usize,
        /// Values of the free parameters, e.g. "z=zeta(7)"; roots of unity only.
        #[arg(long)]
        specialize: Option<String>,
    },
    /// Recompute the composition-factor tables and compare with the golden data.
    Tables {
        #[arg(long = "type")]
        kind: Option<String>,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
        /// Print the golden tables instead of computing.
        #[arg(long)]
        golden: bool,
        /// Compare with (or print) the tables exactly as printed, before errata.
        #[arg(long)]
        printed: bool,
    },
    /// The classified central characters with Z/P sets and orbit aliases.
    Classify {
        #[arg(long = "type")]
        kind: RootKind,
        #[arg(long, default_value = "generic")]
        q: QArg,
    },
    /// Chamber picture of a decomposition.
    Diagram {
        #[arg(long = "type")]
        kind: RootKind,
        #[arg(long, default_value = "generic")]
        q: QArg,
        #[command(flatten)]
        character: CharacterArgs,
        #[arg(long, default_value_t = 0)]
        lift: usize,
        #[arg(long)]
        specialize: Option<String>,
        #[arg(long, value_enum, default_value_t = DiagramFormat::Ascii)]
        format: DiagramFormat,
        /// Output file (stdout if absent).
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Run the verification suites.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagramFormat {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Relations,
    Tau,
    Tables,
    All,
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(v).map_err(|e| CliError::Invariant(e.to_string()))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Decompose { kind, q, character, lift, specialize } => {
            let r = report::decompose(kind, q, &character.get(), lift, specialize.as_deref())?;
            println!("{}", to_json(&r)?);
        }
        Command::Tables { kind, format, golden, printed } => {
            let kinds = parse_kinds(kind.as_deref())?;
            let out = cmd_tables(&kinds, matches!(format, TableFormat::Json), golden, printed)?;
            print!("{}", out.text);
            for m in &out.mismatches {
                eprintln!("{m}");
            }
            if !out.mismatches.is_empty() {
                return Err(CliError::Invariant(format!("{} cell(s) differ from the golden tables", out.mismatches.len())));
            }
        }
        Command::Classify { kind, q } => println!("{}", to_json(&report::classify(kind, q)?)?),
        Command::Diagram { kind, q, character, lift, specialize, format, out } => {
            let a = report::analyse(kind, q, &character.get(), lift, specialize.as_deref())?;
            let d = diagram::layout(&a);
            let text = match format {
                DiagramFormat::Ascii => diagram::render_ascii(&d),
                DiagramFormat::Svg => diagram::render_svg(&d),
            };
            match out {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
                None => print!("{text}"),
            }
        }
        Command::Verify { suite } => {
            let suite = match suite {
                SuiteArg::Relations => Suite::Relations,
                SuiteArg::Tau => Suite::Tau,
                SuiteArg::Tables => Suite::Tables,
                SuiteArg::All => Suite::All,
            };
            let (text, reports) = cmd_verify(suite)?;
            print!("{text}");
            if reports.iter().any(|r| !r.passed()) {
                return Err(CliError::Invariant("verification failed".into()));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // usage errors share exit code 1 with other input errors; 2 means UNRESOLVED
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
