use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (out, message) = ddsurf::cli::run_args(std::env::args_os());
    let mut stdout = std::io::stdout().lock();
    match message {
        Some(text) => {
            let _ = stdout.write_all(text.as_bytes());
        }
        None => {
            let _ = stdout.write_all(ddsurf::cli::render(&out.report).as_bytes());
        }
    }
    ExitCode::from(out.code as u8)
}
