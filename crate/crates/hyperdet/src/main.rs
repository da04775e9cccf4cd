use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(hyperdet::cli::run(std::env::args()) as u8)
}
