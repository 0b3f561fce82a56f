use std::process::ExitCode;

fn main() -> ExitCode {
    let (out, code) = podles_core::cli::main_with(std::env::args_os());
    if code == 0 || code == 3 {
        println!("{out}");
    } else {
        eprintln!("{out}");
    }
    ExitCode::from(code as u8)
}
