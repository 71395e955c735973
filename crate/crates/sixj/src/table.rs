//! Column-oriented output as CSV or JSON.

use std::io::Write;

use serde_json::{json, Map, Value};
use sixj_core::Spin;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(Option<f64>),
    Int(Option<i64>),
    Text(String),
    Bool(bool),
    Flags(Vec<&'static str>),
}

impl Cell {
    pub fn spin(s: Spin) -> Self {
        Cell::Text(spin_decimal(s))
    }

    fn csv(&self) -> String {
        match self {
            Cell::Num(Some(v)) if v.is_finite() => format!("{v:.16e}"),
            Cell::Num(_) | Cell::Int(None) => String::new(),
            Cell::Int(Some(v)) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Flags(f) => f.join(";"),
        }
    }

    /// `None` drops the key from the JSON object.
    fn json(&self, flags: &mut Vec<String>, key: &str) -> Option<Value> {
        match self {
            Cell::Num(Some(v)) if v.is_finite() => Some(json!(v)),
            Cell::Num(Some(_)) => {
                flags.push(format!("{key}_not_finite"));
                None
            }
            Cell::Num(None) | Cell::Int(None) => None,
            Cell::Int(Some(v)) => Some(json!(v)),
            Cell::Text(s) => Some(json!(s)),
            Cell::Bool(b) => Some(json!(b)),
            Cell::Flags(f) => {
                flags.extend(f.iter().map(|s| s.to_string()));
                None
            }
        }
    }
}

/// `"3"` or `"3.5"`.
pub fn spin_decimal(s: Spin) -> String {
    if s.is_integer() {
        format!("{}", s.twice() / 2)
    } else {
        format!("{}.5", s.twice() / 2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub meta: Map<String, Value>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new(), meta: Map::new() }
    }

    pub fn write<W: Write>(&self, format: Format, out: W) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    fn write_csv<W: Write>(&self, out: W) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        w.flush()
    }

    fn write_json<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                let mut flags = Vec::new();
                for (key, cell) in self.columns.iter().zip(row) {
                    if let Some(v) = cell.json(&mut flags, key) {
                        obj.insert((*key).to_string(), v);
                    }
                }
                obj.insert("flags".into(), json!(flags));
                Value::Object(obj)
            })
            .collect();
        let doc = json!({ "meta": self.meta, "rows": rows });
        serde_json::to_writer_pretty(&mut out, &doc)?;
        writeln!(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec!["j23", "value", "flags"]);
        t.rows.push(vec![Cell::spin(Spin::from_twice(7)), Cell::Num(Some(0.1)), Cell::Flags(vec![])]);
        t.rows.push(vec![Cell::spin(Spin::from_twice(8)), Cell::Num(None), Cell::Flags(vec!["pr_caustic", "x"])]);
        t
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        sample().write(Format::Csv, &mut buf).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s, "j23,value,flags\n3.5,1.0000000000000001e-1,\n4,,pr_caustic;x\n");
    }

    #[test]
    fn json_omits_missing_numbers() {
        let mut t = sample();
        t.rows.push(vec![Cell::spin(Spin::from_twice(2)), Cell::Num(Some(f64::NAN)), Cell::Flags(vec![])]);
        let mut buf = Vec::new();
        t.write(Format::Json, &mut buf).unwrap();
        let v: Value = serde_json::from_slice(&buf).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows[0]["value"], json!(0.1));
        assert!(rows[1].get("value").is_none());
        assert_eq!(rows[1]["flags"], json!(["pr_caustic", "x"]));
        assert!(rows[2].get("value").is_none());
        assert_eq!(rows[2]["flags"], json!(["value_not_finite"]));
    }
}
