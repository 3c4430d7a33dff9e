use std::io::Write;
use std::process::ExitCode;

use invol_cli::{limits_from_env, run_args};

fn main() -> ExitCode {
    let outcome = run_args(std::env::args_os(), &limits_from_env());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    std::io::stdout().flush().ok();
    ExitCode::from(outcome.code as u8)
}
