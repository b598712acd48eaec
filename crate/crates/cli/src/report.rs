use std::fmt;

use degwild::degfun::DegreeError;
use degwild::poly::{ParseError, PolyError};
use degwild::wild::WildError;
use serde_json::{Map, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERDICT: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_PRECONDITION: u8 = 3;
pub const EXIT_PRECISION: u8 = 4;

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(what: &str, err: impl fmt::Display) -> Self {
        Self { code: EXIT_PARSE, message: format!("cannot parse {what}: {err}") }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Self { code: EXIT_PRECONDITION, message: message.into() }
    }

    pub fn parse_poly(what: &str, text: &str, err: ParseError) -> Self {
        Self::parse(what, format!("{err} in {text:?}"))
    }
}

impl From<DegreeError> for CliError {
    fn from(e: DegreeError) -> Self {
        let code = if e.is_precision() { EXIT_PRECISION } else { EXIT_PRECONDITION };
        Self { code, message: e.to_string() }
    }
}

impl From<WildError> for CliError {
    fn from(e: WildError) -> Self {
        let code = if e.is_precision() { EXIT_PRECISION } else { EXIT_PRECONDITION };
        Self { code, message: e.to_string() }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        Self::precondition(e.to_string())
    }
}

/// `{command, params, rows|failures, certificate?, verdict}` plus any
/// command-specific fields, and a plain-text rendering.
pub struct Report {
    command: &'static str,
    fields: Map<String, Value>,
    passed: bool,
    lines: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, params: Value) -> Self {
        let mut fields = Map::new();
        fields.insert("params".into(), params);
        Self { command, fields, passed: true, lines: Vec::new() }
    }

    pub fn field(&mut self, key: &str, value: impl serde::Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.fields.insert(key.into(), v);
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    /// Marks the verdict failed unless `ok`.
    pub fn require(&mut self, ok: bool, what: &str) {
        if !ok {
            self.passed = false;
            self.lines.push(format!("FAILED: {what}"));
        }
    }

    pub fn passed(&self) -> bool {
        self.passed
    }

    pub fn to_json(&self) -> String {
        let mut out = self.fields.clone();
        out.insert("command".into(), Value::from(self.command));
        out.insert("verdict".into(), Value::from(if self.passed { "pass" } else { "fail" }));
        let mut text = serde_json::to_string_pretty(&Value::Object(out)).expect("json");
        text.push('\n');
        text
    }

    pub fn to_text(&self) -> String {
        let mut text = format!("{}\n", self.command);
        for l in &self.lines {
            text.push_str("  ");
            text.push_str(l);
            text.push('\n');
        }
        text.push_str(&format!("  verdict: {}\n", if self.passed { "pass" } else { "fail" }));
        text
    }
}

/// Fixed-width table for witness-like rows.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> Vec<String> {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let fmt_row = |cells: Vec<String>| {
        cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ")
    };
    let mut out = vec![fmt_row(header.iter().map(|h| h.to_string()).collect())];
    out.extend(rows.iter().map(|r| fmt_row(r.clone())));
    out
}
