use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use fmzv_cli::{run, set_threads, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = set_threads(cli.threads) {
        eprintln!("error: {}", e.message);
        return ExitCode::from(e.code);
    }
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli.command, &mut out);
    let flushed = out.flush();
    match result {
        Ok(code) => {
            if let Err(e) = flushed {
                eprintln!("error: {}", e);
                return ExitCode::from(fmzv_cli::EXIT_USAGE);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
