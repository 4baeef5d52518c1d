//! `unidesign` command-line front end.

mod bench;
mod construct;
mod csvio;
mod error;
mod evaluate;
mod manifest;
mod sample;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::Value;

use crate::error::{CliError, CliResult};
use crate::manifest::RunManifest;

#[derive(Debug, Parser)]
#[command(name = "unidesign", version, about = "Uniform designs under the centered L2-discrepancy")]
struct Cli {
    /// Worker threads for independent seeds and reps (default: UNIDESIGN_THREADS or all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a design by TA, a refiner, or TA followed by a refiner.
    Construct(construct::ConstructArgs),
    /// Print the CD² (and optionally its gradient) of a design file.
    Evaluate(evaluate::EvaluateArgs),
    /// Draw a Latin hypercube or U-type sample.
    Sample(sample::SampleArgs),
    /// Kriging prediction error of a design or of sampled designs.
    Bench(bench::BenchArgs),
    /// Rerun the command recorded in a manifest and check the result matches.
    Replay {
        manifest: PathBuf,
        /// Rewrite the output files and manifest as well.
        #[arg(long)]
        write: bool,
    },
}

/// What a command produced, before anything touches the filesystem.
pub struct Outcome {
    pub command: &'static str,
    pub config: Value,
    /// Deterministic summary; compared exactly on replay.
    pub result: Value,
    pub stdout: String,
    pub files: Vec<(PathBuf, Vec<u8>)>,
    pub manifest: Option<PathBuf>,
}

fn compute(command: &Command) -> CliResult<Outcome> {
    match command {
        Command::Construct(a) => construct::run(a),
        Command::Evaluate(a) => evaluate::run(a),
        Command::Sample(a) => sample::run(a),
        Command::Bench(a) => bench::run(a),
        Command::Replay { .. } => Err(CliError::Usage("a replay cannot itself be replayed".into())),
    }
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult<()> {
    std::fs::write(path, bytes).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

fn persist(outcome: &Outcome, argv: Vec<String>, started: Instant) -> CliResult<()> {
    for (path, bytes) in &outcome.files {
        write_file(path, bytes)?;
    }
    if let Some(path) = &outcome.manifest {
        let manifest = RunManifest {
            command: outcome.command.to_owned(),
            argv,
            version: unidesign::VERSION.to_owned(),
            config: outcome.config.clone(),
            wall_seconds: started.elapsed().as_secs_f64(),
            result: outcome.result.clone(),
        };
        write_file(path, &manifest.to_json())?;
    }
    Ok(())
}

fn replay(path: &Path, write: bool) -> CliResult<()> {
    let started = Instant::now();
    let recorded = RunManifest::read(path)?;
    let cli = Cli::try_parse_from(&recorded.argv)
        .map_err(|e| CliError::Input(format!("{}: recorded arguments no longer parse: {e}", path.display())))?;
    let outcome = compute(&cli.command)?;
    if recorded.version != unidesign::VERSION {
        eprintln!("note: recorded with version {}, replaying with {}", recorded.version, unidesign::VERSION);
    }
    if outcome.config != recorded.config {
        return Err(CliError::Numerical("replayed configuration differs from the recorded one".into()));
    }
    if outcome.result != recorded.result {
        return Err(CliError::Numerical(format!(
            "replay did not reproduce the result\nrecorded: {}\nreplayed: {}",
            recorded.result, outcome.result
        )));
    }
    if write {
        persist(&outcome, recorded.argv.clone(), started)?;
    }
    print!("{}", outcome.stdout);
    println!("replay matches {}", path.display());
    Ok(())
}

fn configure_threads(jobs: Option<usize>) -> CliResult<()> {
    let from_env = || {
        std::env::var("UNIDESIGN_THREADS").ok().map(|v| {
            v.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("UNIDESIGN_THREADS={v:?} is not a count")))
        })
    };
    let threads = match jobs {
        Some(j) => Some(j),
        None => from_env().transpose()?,
    };
    match threads {
        Some(0) => Err(CliError::Usage("thread count must be at least 1".into())),
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot start {t} threads: {e}"))),
        None => Ok(()),
    }
}

fn run(cli: Cli, argv: Vec<String>) -> CliResult<()> {
    let started = Instant::now();
    configure_threads(cli.jobs)?;
    if let Command::Replay { manifest, write } = &cli.command {
        return replay(manifest, *write);
    }
    let outcome = compute(&cli.command)?;
    persist(&outcome, argv, started)?;
    print!("{}", outcome.stdout);
    Ok(())
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli, argv) {
        Ok(()) => {
            let _ = std::io::stdout().flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("unidesign: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
