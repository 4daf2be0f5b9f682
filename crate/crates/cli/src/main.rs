//! `wm`: command line front end for wm-core.
//!
//! Every command prints one JSON `RunReport` on standard output. Exit codes:
//! 0 on success, 1 when `--expect-witness` is set and nothing was found (or
//! the system is not solvable / not regular), 2 on usage and input errors,
//! 3 on budget or overflow errors.

mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use commands::Cli;
use report::{CliError, Context, RunReport, SCHEMA};

fn threads_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var("WM_THREADS") {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(CliError::Usage(format!("WM_THREADS must be a positive integer, got {v:?}"))),
        },
    }
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
    let threads = match threads_from_env() {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let start = Instant::now();
    let mut ctx = Context::default();
    let mut run = || commands::run(&cli.command, &mut ctx);
    let outcome = match threads {
        Some(n) => wm_core::par::with_threads(n, run),
        None => run(),
    };
    let payload = match outcome {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let report = RunReport {
        schema: SCHEMA,
        command: argv[1..].to_vec(),
        version: env!("CARGO_PKG_VERSION"),
        seeds: ctx.seeds,
        input_digests: ctx.digests,
        payload,
        timing_ms: (!cli.no_timing).then(|| start.elapsed().as_millis() as u64),
    };
    let text = if cli.compact {
        serde_json::to_string(&report)
    } else {
        serde_json::to_string_pretty(&report)
    };
    println!("{}", text.expect("report serializes"));
    if cli.expect_witness && ctx.negative {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}
