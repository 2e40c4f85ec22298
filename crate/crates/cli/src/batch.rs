use std::path::Path;

use clap::Parser;
use serde_json::{json, Value};

use crate::args::{Cli, Format, Global};
use crate::run::{execute, Outcome, EXIT_FAIL, EXIT_OK, EXIT_USAGE};

struct Entry {
    line: usize,
    command: String,
}

fn run_entry(e: &Entry) -> Outcome {
    let argv = std::iter::once("wreathmac").chain(e.command.split_whitespace());
    match Cli::try_parse_from(argv) {
        Ok(cli) if matches!(cli.command, crate::args::Command::Batch { .. }) => Outcome {
            code: EXIT_USAGE,
            stderr: "batch manifests cannot nest".into(),
            ..Default::default()
        },
        Ok(cli) => execute(&cli),
        Err(err) => Outcome {
            code: EXIT_USAGE,
            stderr: err.to_string(),
            ..Default::default()
        },
    }
}

#[cfg(feature = "parallel")]
fn run_all(entries: &[Entry], jobs: usize) -> Vec<Outcome> {
    use rayon::prelude::*;
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| entries.par_iter().map(run_entry).collect()),
        Err(_) => entries.iter().map(run_entry).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_all(entries: &[Entry], _jobs: usize) -> Vec<Outcome> {
    entries.iter().map(run_entry).collect()
}

/// Runs every non-blank, non-comment line of the manifest as a command and
/// aggregates the outcomes.
pub fn run(manifest: &Path, g: &Global) -> Outcome {
    let text = match std::fs::read_to_string(manifest) {
        Ok(t) => t,
        Err(e) => {
            return Outcome {
                code: EXIT_USAGE,
                stderr: format!("cannot read manifest {}: {e}", manifest.display()),
                ..Default::default()
            }
        }
    };
    let entries: Vec<Entry> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
        .map(|(line, l)| Entry {
            line,
            command: l.to_string(),
        })
        .collect();
    let outcomes = run_all(&entries, g.jobs);
    let mut results = Vec::new();
    let mut failures = Vec::new();
    let mut text_lines = Vec::new();
    let mut stderr = String::new();
    for (e, o) in entries.iter().zip(&outcomes) {
        let output: Value = serde_json::from_str(&o.stdout)
            .unwrap_or_else(|_| Value::String(o.stdout.trim_end().to_string()));
        let item = json!({"line": e.line, "command": e.command, "exit": o.code, "output": output});
        if o.code != EXIT_OK {
            failures.push(json!({
                "line": e.line, "command": e.command, "exit": o.code, "message": o.stderr,
            }));
        }
        text_lines.push(format!(
            "{} line {}: {}",
            if o.code == EXIT_OK { "PASS" } else { "FAIL" },
            e.line,
            e.command
        ));
        if !o.stderr.is_empty() {
            stderr.push_str(&format!("line {}: {}\n", e.line, o.stderr));
        }
        results.push(item);
    }
    let passed = failures.is_empty();
    let status = if passed { "pass" } else { "fail" };
    let value = json!({
        "check": "batch",
        "status": status,
        "compared": entries.len(),
        "failures": failures,
        "results": results,
    });
    let stdout = match g.format {
        Format::Json => serde_json::to_string_pretty(&value).expect("serializable") + "\n",
        Format::Text => {
            text_lines.push(format!(
                "{} batch entries={} failed={}",
                status.to_uppercase(),
                entries.len(),
                entries.len() - outcomes.iter().filter(|o| o.code == EXIT_OK).count()
            ));
            text_lines.join("\n") + "\n"
        }
    };
    Outcome {
        code: if passed { EXIT_OK } else { EXIT_FAIL },
        stdout,
        stderr,
    }
}
