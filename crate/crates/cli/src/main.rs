use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = torfan_cli::run(std::env::args_os(), &torfan_cli::Env::from_process());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(outcome.code as u8)
}
