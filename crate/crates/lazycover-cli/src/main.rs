//! `lazycover` — run, sweep, render, and verify gossip-coverage scenarios on
//! the unit circle.

mod commands;
mod config;
mod render;

use anyhow::Result;
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use config::PartialConfig;
use lazycover::Rule;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lazycover",
    version,
    about = "Deterministic simulator for gossip-based coverage of the unit circle by lazy agents",
    after_help = "Exit codes: 0 equipartition/success, 1 usage or I/O error, 2 premature halt,\n\
                  3 step budget exhausted, 4 no feasible event, 5 verification mismatch."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one scenario and write its artifacts
    Run(RunArgs),
    /// Run a schedule for every N in a range and emit CSV
    Sweep(SweepArgs),
    /// Render states from an event log as SVG
    Render(RenderArgs),
    /// Compare a run against the closed-form predictions
    Verify(VerifyArgs),
}

#[derive(Args)]
struct RunArgs {
    /// Number of agents
    #[arg(long)]
    n: Option<u32>,
    /// Interaction schedule: alg4, alg5, or naive_extension
    #[arg(long)]
    rule: Option<Rule>,
    /// Degree of altruism added to every arc, in radians
    #[arg(long)]
    epsilon: Option<f64>,
    /// Step budget for the naive extension (default 10·N)
    #[arg(long)]
    k_max: Option<u32>,
    /// Reserved for future random schedulers
    #[arg(long)]
    seed: Option<u64>,
    /// Scenario file with flat `key = value` lines; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the event log here (line-delimited JSON)
    #[arg(long)]
    log: Option<PathBuf>,
    /// Write the final report here (JSON)
    #[arg(long)]
    report: Option<PathBuf>,
    /// Render the final state here (SVG)
    #[arg(long)]
    render: Option<PathBuf>,
    /// Suppress the stdout summary
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Smallest agent count
    #[arg(long)]
    from: u32,
    /// Largest agent count
    #[arg(long)]
    to: u32,
    /// Interaction schedule: alg4, alg5, or naive_extension
    #[arg(long)]
    rule: Rule,
    /// Degree of altruism added to every arc, in radians
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
    /// Step budget for the naive extension (default 10·N)
    #[arg(long)]
    k_max: Option<u32>,
    /// Output CSV path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    /// Event log to replay
    #[arg(long)]
    log: PathBuf,
    /// Comma-separated event indices to render (default: the final state)
    #[arg(long)]
    step: Option<String>,
    /// Output file (single step) or directory (several steps)
    #[arg(long)]
    out: PathBuf,
    /// Inner hole radius of the annular domain
    #[arg(long, default_value_t = 0.1)]
    inner_radius: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Number of agents
    #[arg(long)]
    n: u32,
    /// Schedule to verify: alg4 (N ≤ 19) or alg5 (N ≤ 5)
    #[arg(long)]
    rule: Rule,
    /// Only print the verdict
    #[arg(long)]
    quiet: bool,
}

fn dispatch(command: Command) -> Result<u8> {
    match command {
        Command::Run(args) => {
            let flags = PartialConfig {
                n: args.n,
                rule: args.rule,
                epsilon: args.epsilon,
                k_max: args.k_max,
                seed: args.seed,
                log_path: args.log,
                report_path: args.report,
                render_path: args.render,
            };
            let base = match &args.config {
                Some(path) => PartialConfig::from_file(path)?,
                None => PartialConfig::default(),
            };
            let config = flags.or(base).resolve()?;
            commands::run(&config, args.quiet)
        }
        Command::Sweep(args) => commands::sweep(
            args.from,
            args.to,
            args.rule,
            args.epsilon,
            args.k_max,
            args.out.as_deref(),
        ),
        Command::Render(args) => commands::render(
            &args.log,
            args.step.as_deref(),
            &args.out,
            args.inner_radius,
        ),
        Command::Verify(args) => commands::verify(args.n, args.rule, args.quiet),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}
