use std::process::ExitCode;

fn main() -> ExitCode {
    spinlyap::cli::main_with_args(std::env::args_os())
}
