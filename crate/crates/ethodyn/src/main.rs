use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(ethodyn::cli::run() as u8)
}
