use std::io::{stderr, stdout};
use std::process::ExitCode;

fn main() -> ExitCode {
    match critset_cli::run(std::env::args_os(), &mut stdout().lock(), &mut stderr().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("critset: {e}");
            ExitCode::from(e.code)
        }
    }
}
