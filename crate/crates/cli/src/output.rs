use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::Value;

use crate::commands::CommandResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn emit(result: &CommandResult, format: Format) {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let written = match format {
        Format::Json => writeln!(out, "{:#}", result.envelope()),
        Format::Csv => write_csv(&mut out, result),
        Format::Text => write_text(&mut out, result),
    };
    if let Err(e) = written {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: {e}");
        }
    }
    if format != Format::Json {
        for e in &result.errors {
            eprintln!("error: {e}");
        }
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

fn write_csv(out: &mut impl Write, result: &CommandResult) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if let Some(table) = &result.table {
        w.write_record(&table.headers)?;
        for row in &table.rows {
            w.write_record(row)?;
        }
    } else if let Value::Object(fields) = &result.payload {
        w.write_record(["field", "value"])?;
        for (k, v) in fields {
            w.write_record([k.as_str(), &scalar(v)])?;
        }
    }
    w.flush()
}

fn write_text(out: &mut impl Write, result: &CommandResult) -> io::Result<()> {
    if result.payload.is_null() {
        return Ok(());
    }
    writeln!(out, "{}: {}", result.command, result.input)?;
    if let Some(table) = &result.table {
        if let Value::Object(fields) = &result.payload {
            for (k, v) in fields.iter().filter(|(k, _)| k.as_str() != "rows") {
                writeln!(out, "  {k}: {}", scalar(v))?;
            }
        }
        let mut widths: Vec<usize> = table.headers.iter().map(|h| h.len()).collect();
        for row in &table.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        writeln!(out, "{}", line(table.headers.clone()))?;
        for row in &table.rows {
            writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
        }
    } else if let Value::Object(fields) = &result.payload {
        for (k, v) in fields {
            writeln!(out, "  {k}: {}", scalar(v))?;
        }
    }
    Ok(())
}
