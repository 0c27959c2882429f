use serde_json::{json, Value};

use crate::commands::{Output, Table};
use crate::config::{Format, RunConfig};

pub fn document(cfg: &RunConfig, out: &Output) -> Value {
    json!({
        "weylchar": env!("CARGO_PKG_VERSION"),
        "config": cfg,
        "result": out.result,
    })
}

pub fn render(cfg: &RunConfig, out: &Output) -> String {
    match cfg.format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&document(cfg, out)).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => csv_text(&out.table),
        Format::Table => table_text(&out.table),
    }
}

/// Rows, then the footer as extra rows whose first cell is the key.
fn csv_text(t: &Table) -> String {
    let mut w = csv::WriterBuilder::new()
        .flexible(true)
        .from_writer(Vec::new());
    w.write_record(&t.columns).expect("in-memory write");
    for row in &t.rows {
        w.write_record(row).expect("in-memory write");
    }
    for (k, v) in &t.footer {
        w.write_record([k, v]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory write")).expect("utf-8")
}

fn table_text(t: &Table) -> String {
    let mut widths: Vec<usize> = t.columns.iter().map(|c| c.len()).collect();
    for row in &t.rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: &[String]| -> String {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = String::new();
    out.push_str(&line(&t.columns));
    out.push('\n');
    out.push_str(
        &widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .join("  "),
    );
    out.push('\n');
    for row in &t.rows {
        out.push_str(&line(row));
        out.push('\n');
    }
    if !t.footer.is_empty() {
        out.push('\n');
        let kw = t.footer.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        for (k, v) in &t.footer {
            out.push_str(&format!("{k:<kw$}  {v}\n"));
        }
    }
    out
}
