use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use avgorder_core::constructors::FamilySpec;
use avgorder_core::corpus::{load_corpus_files, record_for, GroupRecord, ParseOptions};
use avgorder_core::search::{search, verify, SearchOptions, Suite};
use avgorder_core::series::{is_nilpotent, is_solvable};
use avgorder_core::spectrum::order_spectrum;
use avgorder_core::{Error, Rational, DEFAULT_CAP};

const EXIT_VIOLATION: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(name = "avgorder", version, about = "Average element orders of finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find corpus groups whose average order equals a target.
    Search {
        /// Corpus file; repeat to combine several.
        #[arg(long, required = true)]
        corpus: Vec<PathBuf>,
        /// Target average order, as P/Q.
        #[arg(long)]
        target: String,
        #[arg(long)]
        max_order: Option<u64>,
        /// Compare every group, even those whose order rules out the target.
        #[arg(long)]
        no_prefilter: bool,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Run a verification suite over a corpus.
    Verify {
        #[arg(long)]
        corpus: Vec<PathBuf>,
        /// bounds, lemmas, spectra or proof.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Print the order spectrum of one corpus group.
    Spectrum {
        #[arg(long, required = true)]
        corpus: Vec<PathBuf>,
        #[arg(long)]
        id: String,
    },
    /// Build a group from a family spec such as cyclic:6 or semidirect:5,4,2.
    Construct {
        #[arg(long)]
        family: String,
        /// Print a corpus record instead of a summary.
        #[arg(long)]
        emit: bool,
        /// Record id for --emit; defaults to the spec text.
        #[arg(long)]
        id: Option<String>,
    },
}

enum Failure {
    Input(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

fn cap_from_env() -> Result<usize, Failure> {
    match std::env::var("AVGORDER_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| Failure::Input(format!("AVGORDER_CAP={v:?} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn load(paths: &[PathBuf], cap: usize) -> Result<Vec<GroupRecord>, Failure> {
    let options = ParseOptions {
        cap,
        ..ParseOptions::default()
    };
    Ok(load_corpus_files(paths, &options)?)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let cap = cap_from_env()?;
    match cli.command {
        Command::Search {
            corpus,
            target,
            max_order,
            no_prefilter,
            jobs,
        } => {
            let target: Rational = target.parse()?;
            let records = load(&corpus, cap)?;
            let options = SearchOptions {
                target,
                max_order,
                prefilter: !no_prefilter,
                jobs,
            };
            let report = search(&records, &options)?;
            print!("{report}");
            Ok(if report.skipped.is_empty() { 0 } else { EXIT_CAP })
        }
        Command::Verify { corpus, suite, jobs } => {
            let suite: Suite = suite.parse()?;
            if suite != Suite::Proof && corpus.is_empty() {
                return Err(Failure::Input(format!("suite {suite} needs --corpus")));
            }
            let records = load(&corpus, cap)?;
            let report = verify(&records, suite, jobs)?;
            print!("{report}");
            Ok(if report.violations() > 0 {
                EXIT_VIOLATION
            } else if !report.skipped.is_empty() {
                EXIT_CAP
            } else {
                0
            })
        }
        Command::Spectrum { corpus, id } => {
            let records = load(&corpus, cap)?;
            let record = records
                .iter()
                .find(|r| r.id == id)
                .ok_or_else(|| Failure::Input(format!("no group with id {id:?}")))?;
            let spectrum = order_spectrum(&record.group)?;
            println!("id {}", record.id);
            if let Some(name) = &record.name {
                println!("name {name}");
            }
            println!("order {}", spectrum.group_order());
            println!("spectrum {spectrum}");
            println!("psi {}", spectrum.psi());
            println!("avg {}", spectrum.avg_order());
            println!("solvable {}", is_solvable(&record.group)?);
            println!("nilpotent {}", is_nilpotent(&record.group)?);
            Ok(0)
        }
        Command::Construct { family, emit, id } => {
            let spec: FamilySpec = family.parse()?;
            let group = spec.build_with_cap(cap)?;
            let text = spec.to_string();
            if emit {
                let record = record_for(id.as_deref().unwrap_or(&text), Some(&text), "constructor", group)?;
                print!("{record}");
            } else {
                let spectrum = order_spectrum(&group)?;
                println!("family {text}");
                println!("degree {}", group.degree());
                println!("order {}", spectrum.group_order());
                println!("spectrum {spectrum}");
                println!("psi {}", spectrum.psi());
                println!("avg {}", spectrum.avg_order());
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CAP)
        }
    }
}
