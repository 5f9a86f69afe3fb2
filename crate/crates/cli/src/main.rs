mod args;
mod run;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use wittkit::json::error_to_json;
use wittkit::WittError;

use crate::args::Cli;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    if let Some(dir) = std::env::var_os("WITTKIT_CACHE").filter(|d| !d.is_empty()) {
        wittkit::universal::set_cache_dir(Some(dir.into()));
    }
    match run::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            let _ = stdout.flush();
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", error_to_json(&e));
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 1 for malformed input or arguments, 2 for failures of the mathematics.
fn exit_code(e: &WittError) -> u8 {
    match e {
        WittError::Parse(_) | WittError::InvalidArgument(_) => 1,
        _ => 2,
    }
}
