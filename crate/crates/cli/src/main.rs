use std::process::ExitCode;

use clap::Parser;
use gpw_cli::{run, Cli, Format, Status};
use serde_json::json;

fn configure_threads(cli: &Cli) -> Result<(), String> {
    let from_env = match std::env::var("GPW_THREADS") {
        Ok(v) => Some(
            v.parse::<usize>()
                .map_err(|_| format!("GPW_THREADS must be a positive integer, got `{v}`"))?,
        ),
        Err(_) => None,
    };
    if let Some(n) = from_env.or(cli.threads) {
        if n == 0 {
            return Err("thread count must be positive".into());
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Usage as u8 } else { 0 });
        }
    };
    if let Err(message) = configure_threads(&cli) {
        eprintln!("error: {message}");
        return ExitCode::from(Status::Usage as u8);
    }
    match run(&cli) {
        Ok(outcome) => {
            match cli.format {
                Format::Json => println!("{}", outcome.report.to_json()),
                Format::Text => print!("{}", outcome.report.to_text()),
            }
            ExitCode::from(outcome.status as u8)
        }
        Err(e) => {
            match cli.format {
                Format::Json => {
                    let body = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
                    println!("{}", serde_json::to_string_pretty(&body).expect("serializable"));
                }
                Format::Text => eprintln!("error: {e}"),
            }
            ExitCode::from(e.status() as u8)
        }
    }
}
