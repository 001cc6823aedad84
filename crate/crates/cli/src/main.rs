use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use graphcurv_cli::{run, Cli, RunConfig};

fn main() -> ExitCode {
    let cfg = RunConfig::from(Cli::parse());
    match run(&cfg) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(out.exit_code as u8)
        }
        Err(e) => {
            eprintln!("graphcurv: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
