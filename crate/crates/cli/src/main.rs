use std::process::ExitCode;

use gwa_hh_cli::{emit, parse_config, run, EXIT_USAGE};

fn main() -> ExitCode {
    let config = match parse_config(std::env::args_os()) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let outcome = run(&config);
    print!("{}", emit(&outcome.report, config.format));
    for d in &outcome.report.diagnostics {
        eprintln!("gwa-hh: {d}");
    }
    ExitCode::from(outcome.exit_code as u8)
}
