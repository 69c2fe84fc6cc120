use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;
use imac_cli::{exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli.command).and_then(|rendered| match &rendered.out {
        Some(path) => std::fs::write(path, &rendered.text)
            .with_context(|| format!("cannot write {}", path.display())),
        None => std::io::stdout()
            .write_all(rendered.text.as_bytes())
            .context("cannot write to stdout"),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
