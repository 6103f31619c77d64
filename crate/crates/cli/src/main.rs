use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    match qadder_cli::run(std::env::args_os()) {
        Ok(emitted) => {
            let mut stdout = std::io::stdout().lock();
            for item in emitted.iter().filter(|e| e.path.is_none()) {
                if stdout.write_all(item.contents.as_bytes()).is_err() {
                    return ExitCode::from(qadder_cli::Kind::Internal.exit_code());
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{e}");
            e.exit_code()
        }
    }
}
