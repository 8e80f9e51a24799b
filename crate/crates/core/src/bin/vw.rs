use std::io;
use std::process::ExitCode;

use clap::Parser;
use vw_core::cli::{self, Cli};

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            let code = if e.use_stderr() { cli::EXIT_FAILED } else { cli::EXIT_OK };
            return ExitCode::from(code as u8);
        }
    };
    let code = cli::run(&args, &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
