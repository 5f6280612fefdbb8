mod args;
mod commands;
mod datum;
mod error;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::Overrides;
use crate::error::{CliError, Result};
use crate::report::Report;

fn dispatch(cli: &Cli) -> Result<Report> {
    let g = &cli.global;
    let ov = Overrides::parse(&g.overrides)?;
    match &cli.command {
        Command::Table => commands::table(&ov),
        Command::Wall(a) => commands::wall(a),
        Command::Fg(a) => commands::fg(a),
        Command::Orbits(a) => commands::orbits(a),
        Command::Bounds(a) => commands::bounds(a, &ov),
        Command::Section5Scan(a) => commands::section5(a, g),
        Command::Metacyclic => commands::metacyclic(g),
        Command::Brute(a) => commands::brute(a, g),
        Command::Lemmas => commands::lemmas(g),
    }
}

fn run(cli: &Cli) -> Result<bool> {
    if let Some(jobs) = cli.global.jobs {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global();
    }
    let report = dispatch(cli)?;
    let rendered = report.render(cli.global.format)?;
    match &cli.global.out {
        Some(path) => std::fs::write(path, rendered).map_err(|source| CliError::Write {
            path: path.clone(),
            source,
        })?,
        None => print!("{rendered}"),
    }
    let mut stderr = std::io::stderr().lock();
    for f in &report.failures {
        let _ = writeln!(stderr, "{f}");
    }
    Ok(report.pass())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
