use std::process::ExitCode;

use clap::Parser;
use fpfun::cli::{run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(&cli, &mut stdout.lock()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("fpfun: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
