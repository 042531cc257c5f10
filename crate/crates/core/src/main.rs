use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = ptslogic::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code as u8)
}
