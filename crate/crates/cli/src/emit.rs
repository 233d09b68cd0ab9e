use std::io::Write;

use hgcong_core::{CongruenceReport, Verdict};

use crate::config::OutputFormat;
use crate::CliError;

/// Column order of CSV output, equal to the JSON field order.
pub const COLUMNS: [&str; 11] = [
    "check_id",
    "p",
    "l",
    "j0",
    "z0",
    "branch",
    "lhs",
    "rhs",
    "verdict",
    "skip_reason",
    "ms",
];

pub fn emit_report(
    reports: &[CongruenceReport],
    format: OutputFormat,
    sink: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *sink, reports)?;
            writeln!(sink)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(&mut *sink);
            w.write_record(COLUMNS)?;
            for r in reports {
                w.serialize(r)?;
            }
            w.flush()?;
        }
        OutputFormat::Human => write_human(reports, sink)?,
    }
    sink.flush()?;
    Ok(())
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "FAIL",
        Verdict::Skip => "skip",
    }
}

fn write_human(reports: &[CongruenceReport], sink: &mut dyn Write) -> std::io::Result<()> {
    let opt = |s: &Option<String>| s.clone().unwrap_or_else(|| "-".into());
    let rows: Vec<[String; 6]> = reports
        .iter()
        .map(|r| {
            let detail = match r.verdict {
                Verdict::Skip => opt(&r.skip_reason),
                _ => format!("{} | {}", opt(&r.lhs), opt(&r.rhs)),
            };
            [
                r.check_id.clone(),
                r.p.to_string(),
                r.l.map_or("-".into(), |l| l.to_string()),
                opt(&r.j0),
                verdict(r.verdict).to_string(),
                detail,
            ]
        })
        .collect();
    let mut widths = [0usize; 5];
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row.iter()) {
            *w = (*w).max(cell.len());
        }
    }
    for row in &rows {
        writeln!(
            sink,
            "{:<w0$}  {:>w1$}  {:>w2$}  {:<w3$}  {:<w4$}  {}",
            row[0],
            row[1],
            row[2],
            row[3],
            row[4],
            row[5],
            w0 = widths[0],
            w1 = widths[1],
            w2 = widths[2],
            w3 = widths[3],
            w4 = widths[4],
        )?;
    }
    Ok(())
}
