use clap::Parser;
use pencilforge_cli::run::{run, Cli, DEGREE_CAP_VAR};
use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = std::env::var(DEGREE_CAP_VAR).ok();
    let outcome = run(&cli, cap.as_deref());
    // A closed pipe on stdout is not worth a panic.
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
