use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = cycles_cli::run(
        std::env::args_os(),
        io::stdin().lock(),
        io::stdout().lock(),
        io::stderr().lock(),
    );
    ExitCode::from(code)
}
