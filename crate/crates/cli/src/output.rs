use num_complex::Complex64;
use qeuler_core::qalg::format_rat;
use qeuler_core::{BigRat, QRatFunc, ReportValue};
use serde_json::{json, Map, Value};

use crate::args::Format;
use crate::CliError;

/// One output field. JSON keeps structure (rational functions as
/// `{"num", "den"}`, complex numbers as `{"re", "im"}`); text and CSV use
/// the canonical textual forms.
#[derive(Debug, Clone)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Func(QRatFunc),
    Rat(BigRat),
    Complex(Complex64),
    Bool(bool),
    Empty,
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Self::Int(v) => v.to_string(),
            Self::Float(v) => v.to_string(),
            Self::Text(s) => s.clone(),
            Self::Func(f) => f.to_string(),
            Self::Rat(r) => format_rat(r),
            Self::Complex(z) => ReportValue::Numeric(*z).to_string(),
            Self::Bool(b) => b.to_string(),
            Self::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Self::Int(v) => json!(v),
            Self::Float(v) => json!(v),
            Self::Text(s) => json!(s),
            Self::Func(f) => serde_json::to_value(f).expect("rational functions serialize"),
            Self::Rat(r) => json!(format_rat(r)),
            Self::Complex(z) => json!({"re": z.re, "im": z.im}),
            Self::Bool(b) => json!(b),
            Self::Empty => Value::Null,
        }
    }
}

impl From<ReportValue> for Cell {
    fn from(v: ReportValue) -> Self {
        match v {
            ReportValue::Exact(s) => Self::Text(s),
            ReportValue::Numeric(z) => Self::Complex(z),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    fn json_rows(&self) -> Vec<Value> {
        self.rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                Value::Object(obj)
            })
            .collect()
    }

    fn csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::text)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Renders every row; text output is one `name=value` line per row.
    pub fn render(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Text => Ok(self
                .rows
                .iter()
                .map(|row| {
                    let fields: Vec<String> =
                        self.columns.iter().zip(row).map(|(c, v)| format!("{c}={}", v.text())).collect();
                    fields.join(" ") + "\n"
                })
                .collect()),
            Format::Json => Ok(pretty(&Value::Array(self.json_rows()))),
            Format::Csv => self.csv(),
        }
    }

    /// Renders a one-row table; text output is the `value` column alone and
    /// JSON output is a single object.
    pub fn render_single(&self, format: Format) -> Result<String, CliError> {
        match format {
            Format::Text => {
                let idx = self.columns.iter().position(|c| c == "value").unwrap_or(0);
                Ok(self.rows[0][idx].text() + "\n")
            }
            Format::Json => Ok(pretty(&self.json_rows()[0])),
            Format::Csv => self.csv(),
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string(v).expect("json values serialize") + "\n"
}

fn io(e: csv::Error) -> CliError {
    CliError::Io(e.to_string())
}
