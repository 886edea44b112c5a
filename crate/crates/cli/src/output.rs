use csv::Writer;
use serde_json::{json, Value};
use std::fmt::Write as _;

/// One table cell. Values print with 12 decimals in plain output, error
/// bounds with 3 significant digits; CSV always uses 17 significant digits.
#[derive(Debug, Clone)]
pub enum Field {
    Value(f64),
    Err(f64),
    Int(i64),
    Text(String),
    Empty,
}

impl Field {
    fn plain(&self) -> String {
        match self {
            Field::Value(x) => format!("{x:.12}"),
            Field::Err(x) => format!("{x:.2e}"),
            Field::Int(i) => i.to_string(),
            Field::Text(t) => t.clone(),
            Field::Empty => "-".into(),
        }
    }

    fn csv(&self) -> String {
        match self {
            Field::Value(x) | Field::Err(x) => format!("{x:.16e}"),
            Field::Int(i) => i.to_string(),
            Field::Text(t) => t.clone(),
            Field::Empty => String::new(),
        }
    }
}

impl From<&str> for Field {
    fn from(t: &str) -> Self {
        Field::Text(t.to_string())
    }
}

impl From<String> for Field {
    fn from(t: String) -> Self {
        Field::Text(t)
    }
}

impl From<usize> for Field {
    fn from(i: usize) -> Self {
        Field::Int(i as i64)
    }
}

impl From<bool> for Field {
    fn from(b: bool) -> Self {
        Field::Text(b.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Indeterminate,
    Failed,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Indeterminate => 2,
            Status::Failed => 1,
        }
    }
}

/// Everything a command produces, rendered later in the requested format.
#[derive(Debug, Default)]
pub struct Outcome {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Field>>,
    pub results: Value,
    pub errors: Vec<String>,
    pub status: Option<Status>,
    /// Replaces the generic table in plain output.
    pub plain: Option<String>,
    /// Replaces the generic table in CSV output.
    pub csv: Option<Vec<u8>>,
}

impl Outcome {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            results: Value::Null,
            ..Default::default()
        }
    }

    pub fn row(&mut self, fields: Vec<Field>) {
        self.rows.push(fields);
    }

    pub fn fail(&mut self, message: impl Into<String>, status: Status) {
        self.errors.push(message.into());
        self.raise(status);
    }

    pub fn raise(&mut self, status: Status) {
        self.status = Some(self.status.map_or(status, |s| s.max(status)));
    }

    pub fn status(&self) -> Status {
        self.status.unwrap_or(Status::Ok)
    }
}

pub fn render_plain(o: &Outcome) -> String {
    let mut out = match &o.plain {
        Some(p) => p.clone(),
        None => table(o),
    };
    for e in &o.errors {
        let _ = writeln!(out, "error: {e}");
    }
    out
}

fn table(o: &Outcome) -> String {
    let cells: Vec<Vec<String>> = o.rows.iter().map(|r| r.iter().map(Field::plain).collect()).collect();
    let mut widths: Vec<usize> = o.columns.iter().map(|c| c.len()).collect();
    for r in &cells {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.len());
        }
    }
    let line = |r: &[String]| -> String {
        let padded: Vec<String> = r.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(&o.columns);
    for r in &cells {
        out += &line(r);
    }
    out
}

pub fn render_csv(o: &Outcome) -> Result<Vec<u8>, String> {
    if let Some(bytes) = &o.csv {
        return Ok(bytes.clone());
    }
    let mut w = Writer::from_writer(Vec::new());
    w.write_record(&o.columns).map_err(|e| e.to_string())?;
    for r in &o.rows {
        w.write_record(r.iter().map(Field::csv)).map_err(|e| e.to_string())?;
    }
    w.into_inner().map_err(|e| e.to_string())
}

pub fn render_json(spec: &Value, o: &Outcome) -> String {
    let doc = json!({
        "spec": spec,
        "results": o.results,
        "errors": o.errors,
    });
    serde_json::to_string_pretty(&doc).expect("json values serialize") + "\n"
}
