use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use paley_cli::{error_json, run, Cli};
use serde_json::json;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let line = json!({ "error_kind": "UsageError", "message": e.to_string() });
            eprintln!("{line}");
            return ExitCode::from(2);
        }
    };
    let start = Instant::now();
    let stdout = std::io::stdout();
    let mut out = std::io::BufWriter::new(stdout);
    let result = run(&cli, &mut out);
    let flushed = out.flush();
    let elapsed = start.elapsed().as_secs_f64();
    match result.and(flushed.map_err(Into::into)) {
        Ok(()) => {
            eprintln!("{}", json!({ "wall_time_s": elapsed }));
            ExitCode::SUCCESS
        }
        Err(err) => {
            let kind = paley_cli::error_kind(&err);
            eprintln!("{}", error_json(&err));
            if kind == "UsageError" {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
