use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use odakit::commands::{self, AlgebraSource, CompleteSource, PreserveArgs, SweepArgs};
use odakit::{CliError, Limits, RunReport};

/// Completions of finite posets and ordered domain algebras.
///
/// Exit codes: 0 all checks pass, 1 a check failed, 2 a resource guard was
/// hit (raise with ODAKIT_GUARD), 3 bad input.
#[derive(Parser)]
#[command(name = "odakit", version)]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Algebra file.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Use the full relation algebra on this many points.
    #[arg(long)]
    base: Option<usize>,
}

impl Source {
    fn resolve(self) -> AlgebraSource {
        match (self.input, self.base) {
            (Some(p), _) => AlgebraSource::File(p),
            (None, Some(k)) => AlgebraSource::Full(k),
            (None, None) => unreachable!("clap requires one of the two"),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check every ordered-domain-algebra law on an algebra file.
    CheckAxioms {
        #[arg(long)]
        input: PathBuf,
    },
    /// Close an up-set and print the iteration trace.
    Complete {
        /// Base size of the full relation algebra.
        #[arg(long, requires = "generators", conflicts_with_all = ["input", "upset"])]
        base: Option<usize>,
        /// JSON list of relations, each a list of [u, v] pairs.
        #[arg(long)]
        generators: Option<PathBuf>,
        /// Algebra file.
        #[arg(long, requires = "upset")]
        input: Option<PathBuf>,
        /// Comma-separated element indices or labels generating the up-set.
        #[arg(long)]
        upset: Option<String>,
    },
    /// Reproduce the worked counterexamples.
    Examples {
        /// d2, d6, assoc, product or all.
        #[arg(long, default_value = "all")]
        which: String,
    },
    /// Compare inequalities in random expansions and their up-set completions.
    Preserve {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 4)]
        max_poset: usize,
        #[arg(long, default_value_t = 3)]
        max_depth: usize,
    },
    /// Build the representation over closed up-sets.
    Represent {
        #[arg(long)]
        input: PathBuf,
        /// Check the representation clause by clause.
        #[arg(long)]
        verify: bool,
    },
    /// Search for failures of associativity of the partial product.
    StarExplore {
        #[command(flatten)]
        source: Source,
        /// Maximum number of triples to examine.
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Check the closure/completion correspondence and product completions
    /// on random posets.
    CorrespondenceCheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 6)]
        max_poset: usize,
    },
    /// Check which laws survive in the completion of an algebra.
    CompletionAxioms {
        #[command(flatten)]
        source: Source,
    },
}

fn run(command: Command, limits: &Limits) -> Result<RunReport, CliError> {
    match command {
        Command::CheckAxioms { input } => commands::check_axioms_cmd(&input),
        Command::Complete { base, generators, input, upset } => {
            let source = match (base, generators, input, upset) {
                (Some(base), Some(generators), None, None) => CompleteSource::Relations { base, generators },
                (None, None, Some(input), Some(upset)) => CompleteSource::Algebra { input, upset },
                _ => return Err(CliError::input("use either --base K --generators FILE or --input FILE --upset LIST")),
            };
            commands::complete_cmd(&source, limits)
        }
        Command::Examples { which } => commands::examples_cmd(&which),
        Command::Preserve { seed, trials, max_poset, max_depth } => {
            commands::preserve_cmd(&PreserveArgs { seed, trials, max_poset, max_depth }, limits)
        }
        Command::Represent { input, verify } => commands::represent_cmd(&input, verify, limits),
        Command::StarExplore { source, budget } => commands::star_explore_cmd(&source.resolve(), budget, limits),
        Command::CorrespondenceCheck { seed, trials, max_poset } => {
            commands::correspondence_cmd(&SweepArgs { seed, trials, max_poset }, limits)
        }
        Command::CompletionAxioms { source } => commands::completion_axioms_cmd(&source.resolve(), limits),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let started = Instant::now();
    let outcome = Limits::from_env().and_then(|limits| run(cli.command, &limits));
    match outcome {
        Ok(mut report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                report.elapsed = Some(started.elapsed());
                print!("{}", report.to_text());
            }
            ExitCode::from(report.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
