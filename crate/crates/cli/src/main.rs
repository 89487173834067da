mod args;
mod commands;
mod manifest;
mod suite;

use std::cell::RefCell;
use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;

use args::Cli;
use commands::{CliError, Ctx};
use manifest::{digest, file_digest, versions, FileDigest, RunManifest};

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let ctx = Ctx {
        seed: cli.seed,
        threads: cli.threads,
        inputs: RefCell::new(Vec::new()),
    };
    let (code, body) = match commands::run(&cli.command, &ctx) {
        Ok(out) => {
            let body = if cli.json {
                serde_json::to_string_pretty(&out.json).expect("JSON values serialize")
            } else {
                out.text
            };
            (if out.ok { 0 } else { 1 }, Some(body))
        }
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            (2, None)
        }
        Err(CliError::Domain(m)) => {
            eprintln!("error: {m}");
            (1, None)
        }
    };
    let mut outputs = Vec::new();
    if let Some(body) = body {
        let bytes = format!("{body}\n").into_bytes();
        match &cli.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, &bytes) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
                outputs.push(FileDigest {
                    path: path.display().to_string(),
                    sha256: digest(&bytes),
                });
            }
            None => {
                let _ = std::io::stdout().write_all(&bytes);
                outputs.push(FileDigest {
                    path: "<stdout>".into(),
                    sha256: digest(&bytes),
                });
            }
        }
    }
    if let Some(path) = &cli.manifest {
        let inputs = ctx.inputs.borrow().iter().filter_map(|p| file_digest(p).ok()).collect();
        let m = RunManifest {
            command: std::env::args().collect(),
            seed: cli.seed,
            threads: cli.threads,
            versions: versions(),
            inputs,
            outputs,
            exit_code: code,
            elapsed_ms: start.elapsed().as_millis(),
        };
        let text = serde_json::to_string_pretty(&m).expect("manifest serializes");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    ExitCode::from(code as u8)
}
