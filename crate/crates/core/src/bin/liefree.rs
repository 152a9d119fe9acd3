use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use liefree::cli::{run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if !out.stdout.is_empty() {
                // a closed pipe is not an error worth reporting
                let _ = writeln!(std::io::stdout(), "{}", out.stdout);
            }
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
