use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use stark_cli::{run, Command};

fn main() -> ExitCode {
    let cmd = Command::parse();
    let out = run(&cmd);
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code as u8)
}
