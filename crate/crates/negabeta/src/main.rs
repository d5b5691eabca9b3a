use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(negabeta::cli::run() as u8)
}
