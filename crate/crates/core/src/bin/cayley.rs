use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, outcome) = cayley_automatic::cli::run_args(std::env::args_os().skip(1));
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::io::stdout().flush().ok();
    ExitCode::from(code as u8)
}
