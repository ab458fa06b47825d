//! Tabular reports and their CSV/JSON renderings.
//!
//! CSV: a header row, one line per row, then summary lines of the form
//! `# key,value`. Floats carry 17 significant digits, so both renderings
//! hold bit-identical numbers.
//!
//! JSON: `{"command", "config", "rows": [{column: value}], "summary": {key: value}}`.

use std::fmt::Write as _;

use serde_json::{Map, Value};

use crate::config::RunConfig;
use crate::error::CliError;

#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl PartialEq for Cell {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Cell::Int(a), Cell::Int(b)) => a == b,
            (Cell::Float(a), Cell::Float(b)) => a == b || (a.is_nan() && b.is_nan()),
            (Cell::Bool(a), Cell::Bool(b)) => a == b,
            (Cell::Text(a), Cell::Text(b)) => a == b,
            (Cell::Empty, Cell::Empty) => true,
            _ => false,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

fn looks_integral(s: &str) -> bool {
    let digits = s.strip_prefix('-').unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

impl Cell {
    /// Reads a textual field back into the most specific cell type.
    pub fn from_text(s: &str) -> Cell {
        if s.is_empty() {
            return Cell::Empty;
        }
        match s {
            "true" => return Cell::Bool(true),
            "false" => return Cell::Bool(false),
            _ => {}
        }
        if looks_integral(s) {
            if let Ok(v) = s.parse::<i64>() {
                return Cell::Int(v);
            }
        }
        match s.parse::<f64>() {
            Ok(v) => Cell::Float(v),
            Err(_) => Cell::Text(s.to_owned()),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) if v.is_finite() => Value::from(*v),
            Cell::Float(v) => Value::String(v.to_string()),
            Cell::Bool(v) => Value::Bool(*v),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Empty => Value::Null,
        }
    }

    fn from_json(v: &Value) -> Result<Cell, CliError> {
        Ok(match v {
            Value::Null => Cell::Empty,
            Value::Bool(b) => Cell::Bool(*b),
            Value::Number(n) => match n.as_i64() {
                Some(i) => Cell::Int(i),
                None => Cell::Float(n.as_f64().ok_or_else(|| malformed("number out of range"))?),
            },
            Value::String(s) => Cell::from_text(s),
            Value::Array(_) | Value::Object(_) => return Err(malformed("nested value in a cell")),
        })
    }
}

fn malformed(msg: impl Into<String>) -> CliError {
    CliError::Report(msg.into())
}

/// Numeric content of a report, comparable across renderings.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Payload {
    pub rows: Vec<Vec<(String, Cell)>>,
    pub summary: Vec<(String, Cell)>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub config: RunConfig,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
}

impl Report {
    pub fn new(config: RunConfig, columns: &[&str]) -> Self {
        Self {
            config,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Cell>) {
        self.summary.push((key.to_owned(), value.into()));
    }

    pub fn payload(&self) -> Payload {
        Payload {
            rows: self
                .rows
                .iter()
                .map(|r| self.columns.iter().cloned().zip(r.iter().cloned()).collect())
                .collect(),
            summary: self.summary.clone(),
        }
    }

    pub fn render_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).map_err(|e| malformed(e.to_string()))?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::to_text)).map_err(|e| malformed(e.to_string()))?;
        }
        let mut out = String::from_utf8(w.into_inner().map_err(|e| malformed(e.to_string()))?)
            .map_err(|e| malformed(e.to_string()))?;
        for (key, value) in &self.summary {
            let mut line = csv::Writer::from_writer(Vec::new());
            line.write_record([key.as_str(), value.to_text().as_str()])
                .map_err(|e| malformed(e.to_string()))?;
            let line = String::from_utf8(line.into_inner().map_err(|e| malformed(e.to_string()))?)
                .map_err(|e| malformed(e.to_string()))?;
            let _ = write!(out, "# {line}");
        }
        Ok(out)
    }

    pub fn render_json(&self) -> Result<String, CliError> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .cloned()
                        .zip(r.iter().map(Cell::to_json))
                        .collect::<Map<_, _>>(),
                )
            })
            .collect();
        let summary: Map<String, Value> =
            self.summary.iter().map(|(k, v)| (k.clone(), v.to_json())).collect();
        let doc = serde_json::json!({
            "command": self.config.command.as_str(),
            "config": self.config,
            "rows": rows,
            "summary": summary,
        });
        let mut s = serde_json::to_string_pretty(&doc).map_err(|e| malformed(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

/// Reads a CSV rendering back into its payload.
pub fn parse_csv(input: &str) -> Result<Payload, CliError> {
    let mut table = String::new();
    let mut summary = Vec::new();
    for line in input.lines() {
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.strip_prefix(' ').unwrap_or(rest);
            let mut r = csv::ReaderBuilder::new()
                .has_headers(false)
                .from_reader(rest.as_bytes());
            let rec = r
                .records()
                .next()
                .ok_or_else(|| malformed("empty summary line"))?
                .map_err(|e| malformed(e.to_string()))?;
            if rec.len() != 2 {
                return Err(malformed(format!("summary line has {} fields", rec.len())));
            }
            summary.push((rec[0].to_owned(), Cell::from_text(&rec[1])));
        } else {
            table.push_str(line);
            table.push('\n');
        }
    }
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(table.as_bytes());
    let header: Vec<String> = r
        .headers()
        .map_err(|e| malformed(e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| malformed(e.to_string()))?;
        rows.push(
            header
                .iter()
                .cloned()
                .zip(rec.iter().map(Cell::from_text))
                .collect(),
        );
    }
    Ok(Payload { rows, summary })
}

/// Reads a JSON rendering back into its payload.
pub fn parse_json(input: &str) -> Result<Payload, CliError> {
    let doc: Value = serde_json::from_str(input).map_err(|e| malformed(e.to_string()))?;
    let obj = doc.as_object().ok_or_else(|| malformed("top level is not an object"))?;
    let rows = match obj.get("rows") {
        Some(Value::Array(rows)) => rows
            .iter()
            .map(|row| {
                row.as_object()
                    .ok_or_else(|| malformed("row is not an object"))?
                    .iter()
                    .map(|(k, v)| Ok((k.clone(), Cell::from_json(v)?)))
                    .collect::<Result<Vec<_>, CliError>>()
            })
            .collect::<Result<Vec<_>, _>>()?,
        Some(Value::Null) | None => Vec::new(),
        Some(_) => return Err(malformed("`rows` is not an array")),
    };
    let summary = match obj.get("summary") {
        Some(Value::Object(m)) => m
            .iter()
            .map(|(k, v)| Ok((k.clone(), Cell::from_json(v)?)))
            .collect::<Result<Vec<_>, CliError>>()?,
        Some(Value::Null) | None => Vec::new(),
        Some(_) => return Err(malformed("`summary` is not an object")),
    };
    Ok(Payload { rows, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RunConfig;

    fn sample() -> Report {
        let (cfg, _) = RunConfig::try_parse_from(["akr", "residual"]).unwrap();
        let mut r = Report::new(cfg, &["n", "value", "diff", "note"]);
        r.push_row(vec![64.into(), (-0.1f64 / 3.0).into(), Cell::Empty, "a,b \"q\"".into()]);
        r.push_row(vec![128.into(), 1e-300.into(), 0.0.into(), true.into()]);
        r.summarize("limit_estimate", -0.679_570_457_114_761_2);
        r.summarize("rate_estimate", None::<f64>);
        r.summarize("verdict", "PASS");
        r
    }

    #[test]
    fn csv_and_json_carry_identical_payloads() {
        let r = sample();
        let a = parse_csv(&r.render_csv().unwrap()).unwrap();
        let b = parse_json(&r.render_json().unwrap()).unwrap();
        assert_eq!(a, r.payload());
        assert_eq!(b, r.payload());
    }

    #[test]
    fn float_text_has_17_significant_digits() {
        assert_eq!(Cell::Float(0.1).to_text(), "1.0000000000000001e-1");
        assert_eq!(Cell::from_text("1.0000000000000001e-1"), Cell::Float(0.1));
    }

    #[test]
    fn text_classification() {
        assert_eq!(Cell::from_text(""), Cell::Empty);
        assert_eq!(Cell::from_text("-12"), Cell::Int(-12));
        assert_eq!(Cell::from_text("+12"), Cell::Float(12.0));
        assert_eq!(Cell::from_text("true"), Cell::Bool(true));
        assert_eq!(Cell::from_text("PASS"), Cell::Text("PASS".into()));
        assert_eq!(Cell::from_text("99999999999999999999"), Cell::Float(1e20));
    }

    #[test]
    fn malformed_inputs_are_errors() {
        assert!(parse_json("[]").is_err());
        assert!(parse_json("{\"rows\": 3}").is_err());
        assert!(parse_json("{\"rows\": [{\"a\": [1]}]}").is_err());
        assert!(parse_csv("a,b\n1,2,3\n").is_err());
        assert!(parse_csv("a,b\n# k,v,w\n").is_err());
    }
}
