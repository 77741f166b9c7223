use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hankelff::config::{Cli, Format};
use hankelff::run;

fn main() -> ExitCode {
    let cfg = match Cli::parse().into_config() {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("hankelff: {msg}");
            return ExitCode::from(2);
        }
    };
    let report = match run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("hankelff: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let text = match cfg.format {
        Format::Json => report.to_json(),
        Format::Csv => {
            for f in &report.failures {
                eprintln!("failure: {f}");
            }
            for i in &report.informational {
                eprintln!("informational: {i}");
            }
            report.to_csv()
        }
    };
    if std::io::stdout().lock().write_all(text.as_bytes()).is_err() {
        return ExitCode::from(2);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
