use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let exec = z2cross_cli::run(std::env::args_os());
    if let Some(out) = &exec.stdout {
        let mut stdout = std::io::stdout().lock();
        let _ = writeln!(stdout, "{}", out.trim_end());
    }
    if !exec.stderr.is_empty() {
        eprintln!("{}", exec.stderr.trim_end());
    }
    ExitCode::from(exec.exit_code.clamp(0, 255) as u8)
}
