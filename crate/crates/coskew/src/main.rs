use std::process::ExitCode;

fn main() -> ExitCode {
    coskew::cli::main()
}
