mod args;
mod commands;
mod payload;
mod parse;

use std::process::ExitCode;
use std::time::Instant;

use std::io::Write;

use clap::{CommandFactory, FromArgMatches};
use serde_json::{json, Value};

use args::{Cli, Format};
use commands::Output;

fn command_echo(name: &str) -> Value {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    json!({ "name": name, "argv": argv })
}

fn is_string_grid(v: &Value) -> bool {
    v.as_array().is_some_and(|rows| {
        !rows.is_empty() && rows.iter().all(|r| r.as_array().is_some_and(|r| r.iter().all(Value::is_string)))
    })
}

fn write_text(out: &mut impl Write, envelope: &Value) -> std::io::Result<()> {
    if let Some(err) = envelope["error"].as_str() {
        writeln!(out, "error: {err}")?;
    }
    for (k, v) in envelope["result"].as_object().into_iter().flatten() {
        if is_string_grid(v) {
            writeln!(out, "{k}:")?;
            for row in v.as_array().into_iter().flatten() {
                let cells: Vec<&str> = row.as_array().into_iter().flatten().filter_map(Value::as_str).collect();
                writeln!(out, "  {}", cells.join("\t"))?;
            }
        } else {
            writeln!(out, "{k}: {v}")?;
        }
    }
    for w in envelope["warnings"].as_array().into_iter().flatten() {
        writeln!(out, "warning: {}", w.as_str().unwrap_or_default())?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let parsed = Cli::command().try_get_matches().and_then(|m| Cli::from_arg_matches(&m).map(|c| (c, m)));
    let (cli, matches) = match parsed {
        Ok(p) => p,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let name = matches.subcommand_name().unwrap_or_default().to_string();
    let start = Instant::now();
    let outcome = commands::run(&cli);
    let elapsed = start.elapsed().as_secs_f64();
    let (result, warnings, error, code) = match outcome {
        Ok(Output::Raw(text)) => {
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            return ExitCode::SUCCESS;
        }
        Ok(Output::Report { result, warnings }) => (result, warnings, None, 0),
        Err(e) => (Value::Null, Vec::new(), Some(e.to_string()), e.exit_code()),
    };
    let envelope = json!({
        "version": env!("CARGO_PKG_VERSION"),
        "command": command_echo(&name),
        "result": result,
        "warnings": warnings,
        "error": error.clone(),
        "timing": { "seconds": elapsed },
    });
    let mut out = std::io::stdout().lock();
    // a closed pipe is not worth a panic
    let _ = match cli.format {
        Format::Json => writeln!(out, "{envelope}"),
        Format::Text => write_text(&mut out, &envelope),
    };
    if let Some(msg) = error {
        eprintln!("error: {msg}");
    }
    ExitCode::from(code as u8)
}
