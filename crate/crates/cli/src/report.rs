//! Reports: one JSON object with a stable key order, or a TSV table of the
//! per-degree rows.

use std::time::Instant;

use rips_kunneth_core::kunneth::{Clock, Prediction};
use rips_kunneth_core::FgAbelianGroup;
use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
}

/// Wall clock for per-degree timings, or a frozen one for byte-stable output.
pub struct WallClock {
    start: Option<Instant>,
}

impl WallClock {
    pub fn new(enabled: bool) -> Self {
        Self { start: enabled.then(Instant::now) }
    }

    pub fn enabled(&self) -> bool {
        self.start.is_some()
    }
}

impl Clock for WallClock {
    fn micros(&self) -> u64 {
        self.start.map_or(0, |s| s.elapsed().as_micros().try_into().unwrap_or(u64::MAX))
    }
}

/// Torsion as an ascending invariant-factor list. Orders that do not fit in
/// a `u64` are written as decimal strings.
pub fn group_json(g: &FgAbelianGroup) -> Value {
    json!({ "rank": g.rank(), "torsion": torsion_json(g) })
}

fn torsion_json(g: &FgAbelianGroup) -> Value {
    g.torsion()
        .iter()
        .map(|d| u64::try_from(d).map_or_else(|_| Value::String(d.to_string()), Value::from))
        .collect()
}

pub fn prediction_json(p: &Prediction) -> Value {
    json!({
        "rank": p.total.rank(),
        "torsion": torsion_json(&p.total),
        "tensor": group_json(&p.tensor_part),
        "tor": group_json(&p.tor_part),
    })
}

/// Builder for the top-level object. Keys appear in insertion order:
/// `config`, `spaces`, any result-specific keys, `degrees`, `timings`.
pub struct Report {
    root: Map<String, Value>,
    degrees: Vec<Value>,
    timings: Map<String, Value>,
}

impl Report {
    pub fn new(config: Value, spaces: Vec<Value>) -> Self {
        let mut root = Map::new();
        root.insert("config".into(), config);
        root.insert("spaces".into(), Value::Array(spaces));
        Self { root, degrees: Vec::new(), timings: Map::new() }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        self.root.insert(key.into(), value);
    }

    pub fn push_degree(&mut self, row: Value) {
        self.degrees.push(row);
    }

    pub fn time(&mut self, key: &str, micros: u64) {
        self.timings.insert(key.into(), micros.into());
    }

    pub fn to_value(&self) -> Value {
        let mut root = self.root.clone();
        root.insert("degrees".into(), Value::Array(self.degrees.clone()));
        root.insert("timings".into(), Value::Object(self.timings.clone()));
        Value::Object(root)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_value()).expect("JSON values always serialise");
                s.push('\n');
                s
            }
            Format::Tsv => tsv(&self.degrees),
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(xs) => {
            let cells: Vec<String> = xs.iter().map(cell).collect();
            out.push((prefix.into(), cells.join(",")));
        }
        x => out.push((prefix.into(), cell(x))),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}

/// Columns in order of first appearance; missing cells print as `-`.
fn tsv(rows: &[Value]) -> String {
    let flat: Vec<Vec<(String, String)>> = rows
        .iter()
        .map(|r| {
            let mut out = Vec::new();
            flatten("", r, &mut out);
            out
        })
        .collect();
    let mut header: Vec<&str> = Vec::new();
    for row in &flat {
        for (k, _) in row {
            if !header.contains(&k.as_str()) {
                header.push(k);
            }
        }
    }
    let mut out = header.join("\t");
    out.push('\n');
    for row in &flat {
        let cells: Vec<&str> = header
            .iter()
            .map(|h| row.iter().find(|(k, _)| k == h).map_or("-", |(_, v)| v.as_str()))
            .collect();
        out.push_str(&cells.join("\t"));
        out.push('\n');
    }
    out
}
