use std::process::ExitCode;

use clap::Parser;
use erasure_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    match run(cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("erasure: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
