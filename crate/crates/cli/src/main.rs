use std::io::Write;
use std::process::ExitCode;

use read_engine_cli::{run_command, Config};

fn main() -> ExitCode {
    let config = match Config::from_env() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let outcome = run_command(std::env::args_os().skip(1), config);
    ExitCode::from(outcome.exit_code as u8)
}
