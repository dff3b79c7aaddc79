//! Tabular verdict reports: one structure, three renderings.
//!
//! Every demo suite and multi-row check returns a [`VerdictReport`]:
//! a titled table with named inputs, a fixed column set, per-row cells
//! and optional notes, free-form summary lines, and an optional overall
//! pass flag (absent for purely informational tables). The same report
//! renders as plain text (`Display`), JSON ([`VerdictReport::to_json`]),
//! or CSV ([`VerdictReport::to_csv`]), all deterministically.

use crate::config::Config;
use serde_json::{json, Map, Value};
use std::fmt;

/// One table row: an index, one cell per column, and an optional note.
#[derive(Debug, Clone)]
pub struct ReportRow {
    pub k: u64,
    pub cells: Vec<String>,
    pub note: Option<String>,
}

/// A titled, configurable verdict table.
#[derive(Debug, Clone)]
pub struct VerdictReport {
    pub title: String,
    pub config: Config,
    pub seed: Option<u64>,
    pub inputs: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<ReportRow>,
    pub summary: Vec<String>,
    /// `Some(true/false)` for checked suites, `None` for informational
    /// tables that assert nothing.
    pub passed: Option<bool>,
    pub diagnostics: Vec<String>,
}

impl VerdictReport {
    pub fn new(title: impl Into<String>, config: &Config) -> Self {
        VerdictReport {
            title: title.into(),
            config: config.clone(),
            seed: None,
            inputs: Vec::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            summary: Vec::new(),
            passed: None,
            diagnostics: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn input(&mut self, name: impl Into<String>, value: impl fmt::Display) {
        self.inputs.push((name.into(), value.to_string()));
    }

    pub fn set_columns(&mut self, cols: &[&str]) {
        self.columns = cols.iter().map(|c| c.to_string()).collect();
    }

    pub fn push_row(&mut self, k: u64, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(ReportRow { k, cells, note: None });
    }

    pub fn push_row_note(&mut self, k: u64, cells: Vec<String>, note: impl Into<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(ReportRow { k, cells, note: Some(note.into()) });
    }

    pub fn summarize(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }

    pub fn diagnostic(&mut self, line: impl Into<String>) {
        self.diagnostics.push(line.into());
    }

    /// Record a pass flag, AND-ing with any flag already present.
    pub fn record_passed(&mut self, ok: bool) {
        self.passed = Some(self.passed.map_or(ok, |p| p && ok));
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert("k".into(), json!(r.k));
                for (name, cell) in self.columns.iter().zip(&r.cells) {
                    m.insert(name.clone(), json!(cell));
                }
                if let Some(note) = &r.note {
                    m.insert("note".into(), json!(note));
                }
                Value::Object(m)
            })
            .collect();
        let inputs: Vec<Value> = self
            .inputs
            .iter()
            .map(|(n, v)| json!({ "name": n, "value": v }))
            .collect();
        json!({
            "title": self.title,
            "config": serde_json::to_value(&self.config).expect("config serializes"),
            "seed": self.seed,
            "inputs": inputs,
            "columns": self.columns,
            "rows": rows,
            "summary": self.summary,
            "passed": self.passed,
            "diagnostics": self.diagnostics,
        })
    }

    /// RFC-4180-style CSV of the table body: `k`, the columns, `note`.
    pub fn to_csv(&self) -> String {
        fn field(s: &str) -> String {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s.to_string()
            }
        }
        let mut out = String::new();
        out.push('k');
        for c in &self.columns {
            out.push(',');
            out.push_str(&field(c));
        }
        out.push_str(",note\n");
        for r in &self.rows {
            out.push_str(&r.k.to_string());
            for cell in &r.cells {
                out.push(',');
                out.push_str(&field(cell));
            }
            out.push(',');
            if let Some(note) = &r.note {
                out.push_str(&field(note));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for VerdictReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {} ==", self.title)?;
        if let Some(seed) = self.seed {
            writeln!(f, "seed: {}", seed)?;
        }
        for (name, value) in &self.inputs {
            writeln!(f, "{}: {}", name, value)?;
        }
        if !self.rows.is_empty() {
            // Column widths from header and cells.
            let mut widths: Vec<usize> = self.columns.iter().map(String::len).collect();
            let mut k_width = 1;
            for r in &self.rows {
                k_width = k_width.max(r.k.to_string().len());
                for (w, cell) in widths.iter_mut().zip(&r.cells) {
                    *w = (*w).max(cell.len());
                }
            }
            write!(f, "{:>kw$}", "k", kw = k_width)?;
            for (c, w) in self.columns.iter().zip(&widths) {
                write!(f, "  {:>w$}", c, w = w)?;
            }
            writeln!(f)?;
            for r in &self.rows {
                write!(f, "{:>kw$}", r.k, kw = k_width)?;
                for (cell, w) in r.cells.iter().zip(&widths) {
                    write!(f, "  {:>w$}", cell, w = w)?;
                }
                if let Some(note) = &r.note {
                    write!(f, "  # {}", note)?;
                }
                writeln!(f)?;
            }
        }
        for line in &self.summary {
            writeln!(f, "{}", line)?;
        }
        for line in &self.diagnostics {
            writeln!(f, "note: {}", line)?;
        }
        if let Some(ok) = self.passed {
            writeln!(f, "{}", if ok { "PASS" } else { "FAIL" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerdictReport {
        let cfg = Config::default();
        let mut r = VerdictReport::new("sample", &cfg).with_seed(42);
        r.input("u", "x/eps");
        r.set_columns(&["d_s", "verdict"]);
        r.push_row(1, vec!["1.000000000".into(), "holds".into()]);
        r.push_row_note(2, vec!["0.5, approx".into(), "fails".into()], "tie");
        r.summarize("d_s constant");
        r.record_passed(true);
        r
    }

    #[test]
    fn json_shape() {
        let v = sample().to_json();
        assert_eq!(v["title"], "sample");
        assert_eq!(v["seed"], 42);
        assert_eq!(v["rows"][0]["k"], 1);
        assert_eq!(v["rows"][0]["d_s"], "1.000000000");
        assert_eq!(v["rows"][1]["note"], "tie");
        assert_eq!(v["passed"], true);
        assert_eq!(v["config"]["tail_order"], "40");
        assert!(v["config"]["residual_tol"].as_f64().unwrap() == 1e-10);
    }

    #[test]
    fn csv_quotes_embedded_commas() {
        let csv = sample().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("k,d_s,verdict,note"));
        assert_eq!(lines.next(), Some("1,1.000000000,holds,"));
        assert_eq!(lines.next(), Some("2,\"0.5, approx\",fails,tie"));
    }

    #[test]
    fn passed_accumulates_with_and() {
        let mut r = sample();
        r.record_passed(false);
        assert_eq!(r.passed, Some(false));
        r.record_passed(true);
        assert_eq!(r.passed, Some(false));
    }

    #[test]
    fn plain_rendering_is_aligned() {
        let text = sample().to_string();
        assert!(text.starts_with("== sample ==\n"));
        assert!(text.contains("seed: 42"));
        assert!(text.contains("PASS"));
        assert!(text.contains("# tie"));
    }
}
