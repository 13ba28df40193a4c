use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use koszul_entropy::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match run(&cli) {
        Ok(outcome) => {
            let mut out = std::io::stdout().lock();
            if out
                .write_all(outcome.stdout.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(1);
            }
            outcome.exit_code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    // Timing goes to stderr so stdout stays byte-identical across runs.
    eprintln!("wall-time: {:.3} s", start.elapsed().as_secs_f64());
    ExitCode::from(code as u8)
}
