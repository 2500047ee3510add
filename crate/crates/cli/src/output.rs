//! CSV and JSON document assembly. Floats are rendered with Rust's shortest
//! round-trip formatting so identical runs produce identical bytes; CSV files
//! carry `#`-prefixed metadata lines before the header row and use LF line
//! endings.

use serde_json::{Map, Value};

/// Shortest round-trip rendering of a float: plain decimal for moderate
/// magnitudes, scientific for very small ones so residual columns stay
/// compact. Both forms parse back to the identical bits.
pub fn fmt_f64(x: f64) -> String {
    if x == 0.0 || x.abs() >= 1e-4 {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

pub struct CsvDoc {
    lines: Vec<String>,
}

impl CsvDoc {
    pub fn new() -> Self {
        Self { lines: Vec::new() }
    }

    pub fn comment(&mut self, key: &str, value: impl AsRef<str>) {
        self.lines.push(format!("# {} = {}", key, value.as_ref()));
    }

    pub fn header(&mut self, columns: &[&str]) {
        self.lines.push(columns.join(","));
    }

    pub fn row(&mut self, fields: &[String]) {
        self.lines.push(fields.join(","));
    }

    pub fn finish(self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

/// One top-level object per command: `meta` with the parameters and `data`
/// as an array of records. Keys are emitted in sorted order, so the output
/// is byte-stable for identical inputs.
pub struct JsonDoc {
    meta: Map<String, Value>,
    data: Vec<Value>,
}

impl JsonDoc {
    pub fn new(command: &str) -> Self {
        let mut meta = Map::new();
        meta.insert("command".into(), Value::String(command.into()));
        meta.insert(
            "version".into(),
            Value::String(env!("CARGO_PKG_VERSION").into()),
        );
        Self {
            meta,
            data: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: Value) {
        self.meta.insert(key.into(), value);
    }

    pub fn push(&mut self, record: Value) {
        self.data.push(record);
    }

    pub fn finish(self) -> String {
        let mut root = Map::new();
        root.insert("meta".into(), Value::Object(self.meta));
        root.insert("data".into(), Value::Array(self.data));
        let mut s =
            serde_json::to_string_pretty(&Value::Object(root)).expect("json document serializes");
        s.push('\n');
        s
    }
}

pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}
