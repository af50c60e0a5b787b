use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;
use utree_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            if !out.text.is_empty() {
                // a closed pipe (e.g. `| head`) is not an error worth reporting
                let _ = writeln!(io::stdout().lock(), "{}", out.text);
            }
            ExitCode::from(out.outcome.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
