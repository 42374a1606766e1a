use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use mzstar::cli::{render_error, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(outcome) => {
            let _ = std::io::stdout().write_all(outcome.output.as_bytes());
            ExitCode::from(outcome.code as u8)
        }
        Err(e) => {
            let text = render_error(&e, cli.json);
            if cli.json {
                let _ = std::io::stdout().write_all(text.as_bytes());
            } else {
                let _ = std::io::stderr().write_all(text.as_bytes());
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
