use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use grpoly_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if cli.flags.timing {
        report.wall_time_ms = Some(start.elapsed().as_millis() as u64);
    }
    let text = report.render(cli.flags.format);
    match &cli.flags.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(report.exit_code())
}
