use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use retor_cli::commands::{run_mapping_torus, run_torsion, run_turaev, Overrides};
use retor_cli::corpus::{render_table, run_corpus};
use retor_cli::report::to_canonical_json;
use retor_cli::schema::{parse_input, EngineChoice};
use retor_cli::CliError;

#[derive(Parser)]
#[command(
    name = "retor",
    version,
    about = "Twisted Reidemeister torsion: computation and topological diagnostics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EngineArg {
    Wada,
    Fibered,
    Both,
}

impl From<EngineArg> for EngineChoice {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Wada => EngineChoice::Wada,
            EngineArg::Fibered => EngineChoice::Fibered,
            EngineArg::Both => EngineChoice::Both,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Torsion and diagnostics for a presentation problem file
    Torsion {
        /// Problem file (JSON)
        #[arg(long)]
        input: PathBuf,
        /// Write the report here instead of stdout
        #[arg(long)]
        output: Option<PathBuf>,
        /// Depth limit for unit-membership searches
        #[arg(long)]
        search_bound: Option<u32>,
        /// Recorded Thurston norm, enabling the degree criterion
        #[arg(long)]
        known_norm: Option<i64>,
    },
    /// Torsion of an explicit based 4-term chain complex
    Turaev {
        /// Complex file (JSON)
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Evaluate every selection and report sign-level agreement
        #[arg(long)]
        verify_selections: bool,
    },
    /// Build a mapping torus from a monodromy file and run the engines
    MappingTorus {
        /// Monodromy file (JSON)
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long)]
        search_bound: Option<u32>,
        #[arg(long)]
        known_norm: Option<i64>,
        /// Which engine(s) to run
        #[arg(long, value_enum)]
        engine: Option<EngineArg>,
    },
    /// Run the bundled example corpus and check its invariants
    Corpus {
        /// Keep only entries whose name contains this substring
        #[arg(long)]
        filter: Option<String>,
        /// Keep only entries marked as fibered
        #[arg(long)]
        fibered: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn read_input(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::schema(format!("cannot read {}: {e}", path.display())))
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::internal(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Torsion {
            input,
            output,
            search_bound,
            known_norm,
        } => {
            let file = parse_input(&read_input(&input)?)?;
            let overrides = Overrides {
                search_bound,
                known_norm,
                ..Overrides::default()
            };
            let report = run_torsion(&file, &overrides)?;
            emit(&to_canonical_json(&report), output.as_deref())
        }
        Command::Turaev {
            input,
            output,
            verify_selections,
        } => {
            let file = parse_input(&read_input(&input)?)?;
            let overrides = Overrides {
                verify_selections,
                ..Overrides::default()
            };
            let report = run_turaev(&file, &overrides)?;
            emit(&to_canonical_json(&report), output.as_deref())
        }
        Command::MappingTorus {
            input,
            output,
            search_bound,
            known_norm,
            engine,
        } => {
            let file = parse_input(&read_input(&input)?)?;
            let overrides = Overrides {
                search_bound,
                known_norm,
                engine: engine.map(EngineChoice::from),
                verify_selections: false,
            };
            let report = run_mapping_torus(&file, &overrides)?;
            emit(&to_canonical_json(&report), output.as_deref())
        }
        Command::Corpus {
            filter,
            fibered,
            output,
        } => {
            let rows = run_corpus(filter.as_deref(), fibered)?;
            emit(&render_table(&rows), output.as_deref())?;
            if rows.iter().any(|r| !r.failures.is_empty()) {
                return Err(CliError::internal(
                    "corpus invariants failed; see table above",
                ));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
