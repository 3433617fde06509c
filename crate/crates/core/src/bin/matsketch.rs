use std::process::ExitCode;

fn main() -> ExitCode {
    let out = matsketch::cli::run_cli(std::env::args_os());
    print!("{}", out.stdout);
    if !out.stderr.is_empty() {
        eprintln!("{}", out.stderr);
    }
    ExitCode::from(out.code as u8)
}
