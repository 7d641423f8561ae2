use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let out = parabolica::run(&args);
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    for line in &out.stderr {
        eprintln!("{line}");
    }
    ExitCode::from(out.exit)
}
