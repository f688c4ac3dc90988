//! `qaa`: brute-force Max-Cut, simulated adiabatic runs, eigenphase flows
//! and intersection indices from graph JSON files.
//!
//! Exit status: 0 success, 2 bad input, 3 problem too large, 4 numerical failure.

mod commands;
mod manifest;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use commands::{BruteArgs, FlowArgs, IndexArgs, Output, QaaArgs};
use manifest::RunManifest;
use qaa_core::noise::NoiseModel;
use qaa_core::ErrorKind;

const THREADS_ENV: &str = "QAA_THREADS";

#[derive(Parser)]
#[command(
    name = "qaa",
    version,
    about = "Trotterized quantum adiabatic evolution for Max-Cut"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact Max-Cut value and every optimal partition.
    Brute(BruteArgs),
    /// Run the annealing circuit and sample measurement outcomes.
    Qaa(QaaArgs),
    /// Eigenphases of the fixed-s circuit unitary over s in [0, 1] as CSV.
    Flow(FlowArgs),
    /// Signed crossings of the ground gap along the real-axis flow.
    Index(IndexArgs),
    /// Repeat a run recorded in a manifest file.
    Rerun {
        manifest: PathBuf,
        /// Write to this path instead of the recorded one.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| run(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    let kind = err
        .chain()
        .find_map(|e| e.downcast_ref::<qaa_core::Error>())
        .map(|e| e.kind());
    match kind {
        Some(ErrorKind::Budget) => 3,
        Some(ErrorKind::Numerical) => 4,
        Some(ErrorKind::Input) | None => 2,
    }
}

fn configure_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .with_context(|| format!("{THREADS_ENV}={value:?} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()?;
    Ok(())
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Brute(args) => execute(
            "brute",
            &args.graph.clone(),
            args.out.clone(),
            None,
            &args,
            commands::brute,
        ),
        Command::Qaa(mut args) => {
            // Record the canonical preset name.
            if let Some(name) = &args.noise {
                args.noise = Some(name.parse::<NoiseModel>()?.to_string());
            }
            execute(
                "qaa",
                &args.graph.clone(),
                args.out.clone(),
                Some(args.seed),
                &args,
                |g| commands::qaa(g, &args),
            )
        }
        Command::Flow(args) => execute(
            "flow",
            &args.graph.clone(),
            args.out.clone(),
            None,
            &args,
            |g| commands::flow(g, &args),
        ),
        Command::Index(args) => execute(
            "index",
            &args.graph.clone(),
            args.out.clone(),
            None,
            &args,
            |g| commands::index(g, &args),
        ),
        Command::Rerun { manifest, out } => rerun(&manifest, out),
    }
}

fn rerun(path: &Path, out: Option<PathBuf>) -> Result<()> {
    let recorded = RunManifest::read(path)?;
    let bytes = std::fs::read(&recorded.graph_file)
        .with_context(|| format!("cannot read graph file {}", recorded.graph_file.display()))?;
    recorded.check_graph(&bytes)?;
    let params = recorded.params.clone();
    let command = match recorded.command.as_str() {
        "brute" => {
            let mut args: BruteArgs = serde_json::from_value(params)?;
            args.out = out.or(args.out);
            Command::Brute(args)
        }
        "qaa" => {
            let mut args: QaaArgs = serde_json::from_value(params)?;
            args.out = out.or(args.out);
            Command::Qaa(args)
        }
        "flow" => {
            let mut args: FlowArgs = serde_json::from_value(params)?;
            if out.is_some() {
                // A fresh output path gets a fresh branch file next to it.
                args.branches = None;
                args.out = out;
            }
            Command::Flow(args)
        }
        "index" => {
            let mut args: IndexArgs = serde_json::from_value(params)?;
            args.out = out.or(args.out);
            Command::Index(args)
        }
        other => bail!("manifest names unknown command {other:?}"),
    };
    run(command)
}

fn execute<A, F>(
    name: &str,
    graph_path: &Path,
    out: Option<PathBuf>,
    seed: Option<u64>,
    args: &A,
    body: F,
) -> Result<()>
where
    A: serde::Serialize,
    F: FnOnce(&qaa_core::Graph) -> Result<Output>,
{
    let started = Instant::now();
    let (graph, bytes) = commands::load_graph(graph_path)?;
    let output = body(&graph)?;
    for note in &output.notes {
        eprintln!("{note}");
    }
    for (path, text) in &output.extra {
        std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))?;
    }
    let Some(out) = out else {
        print!("{}", output.primary);
        return Ok(());
    };
    std::fs::write(&out, &output.primary)
        .with_context(|| format!("cannot write {}", out.display()))?;
    RunManifest {
        command: name.to_string(),
        params: serde_json::to_value(args)?,
        graph_file: graph_path.to_path_buf(),
        graph_sha256: manifest::digest(&bytes),
        seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
        duration_seconds: started.elapsed().as_secs_f64(),
    }
    .write(&RunManifest::path_for(&out))
}
