//! Deterministic text rendering for CSV and JSON output.
//!
//! Floats are printed with exactly 10 significant digits so that repeated
//! runs produce byte-identical files suitable for golden-file comparison.

/// Formats a float with 10 significant digits.
///
/// Fixed-point within a sane magnitude range, scientific notation outside it.
/// The output is a valid JSON number either way.
pub fn sig10(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let a = x.abs();
    if (1e-4..1e15).contains(&a) {
        let magnitude = a.log10().floor() as i32;
        let decimals = (9 - magnitude).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        format!("{x:.9e}")
    }
}

/// A flat JSON object writer with insertion order preserved.
#[derive(Default)]
pub struct JsonObject {
    fields: Vec<(String, String)>,
}

impl JsonObject {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn number(mut self, key: &str, value: f64) -> Self {
        self.fields.push((key.to_string(), sig10(value)));
        self
    }

    pub fn integer(mut self, key: &str, value: i64) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn boolean(mut self, key: &str, value: bool) -> Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn string(mut self, key: &str, value: &str) -> Self {
        self.fields
            .push((key.to_string(), format!("\"{}\"", escape(value))));
        self
    }

    pub fn null(mut self, key: &str) -> Self {
        self.fields.push((key.to_string(), "null".to_string()));
        self
    }

    pub fn raw(mut self, key: &str, value: String) -> Self {
        self.fields.push((key.to_string(), value));
        self
    }

    pub fn render(&self) -> String {
        let body: Vec<String> = self
            .fields
            .iter()
            .map(|(k, v)| format!("\"{}\": {}", escape(k), v))
            .collect();
        format!("{{{}}}", body.join(", "))
    }
}

/// Renders a JSON array of already-rendered values.
pub fn json_array(values: impl IntoIterator<Item = String>) -> String {
    let body: Vec<String> = values.into_iter().collect();
    format!("[{}]", body.join(", "))
}

fn escape(s: &str) -> String {
    s.chars()
        .flat_map(|c| match c {
            '"' => "\\\"".chars().collect::<Vec<_>>(),
            '\\' => "\\\\".chars().collect(),
            '\n' => "\\n".chars().collect(),
            c => vec![c],
        })
        .collect()
}

/// A CSV table writer: header row plus data rows, newline-terminated.
pub struct CsvTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<String>) {
        assert_eq!(cells.len(), self.header.len(), "row width mismatch");
        self.rows.push(cells);
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}
