mod cli;
mod commands;
mod config;
mod fmt;
mod manifest;

use std::ffi::OsString;
use std::process::ExitCode;

use clap::Parser;

use cli::{Cli, Command};
use commands::Ctx;
use manifest::RunManifest;

fn error_kind(err: &anyhow::Error) -> &'static str {
    if let Some(e) = err.downcast_ref::<hyperwalk_core::Error>() {
        e.kind()
    } else if err.chain().any(|c| c.is::<std::io::Error>()) {
        "Io"
    } else if err.chain().any(|c| c.is::<serde_json::Error>()) {
        "Parse"
    } else {
        "Error"
    }
}

fn run(cli: Cli, argv: &[OsString]) -> anyhow::Result<()> {
    let mut ctx = Ctx {
        json: cli.json,
        manifest: RunManifest::new(argv.iter().map(|a| a.to_string_lossy().into_owned()).collect()),
    };
    match &cli.command {
        Command::Transition(a) => commands::transition(&mut ctx, a)?,
        Command::Stationary(a) => commands::stationary(&mut ctx, a)?,
        Command::Spectral(a) => commands::spectral(&mut ctx, a)?,
        Command::Reduce(a) => commands::reduce(&mut ctx, a)?,
        Command::Rankagg(a) => commands::rankagg(&mut ctx, a)?,
        Command::Validate(a) => commands::validate(&mut ctx, a)?,
        Command::Demo => commands::demo(&mut ctx)?,
    }
    if let Some(path) = ctx.manifest.destination(cli.manifest.as_deref()) {
        ctx.manifest.save(&path)?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let mut argv: Vec<OsString> = std::env::args_os().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let cli = match &cli.config {
        None => cli,
        Some(path) => {
            match config::merge(argv.clone(), path) {
                Ok(merged) => argv = merged,
                Err(e) => {
                    eprintln!("error: Config: {e:#}");
                    return ExitCode::from(2);
                }
            }
            match Cli::try_parse_from(&argv) {
                Ok(cli) => cli,
                Err(e) => e.exit(),
            }
        }
    };
    match run(cli, &argv) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {e:#}", error_kind(&e));
            ExitCode::from(1)
        }
    }
}
