//! Table rendering shared by every subcommand.

use std::fmt::Write as _;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Md,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cell {
    Blank,
    Int(u64),
    /// Preformatted text such as a rounded ratio, kept verbatim in every format.
    Text(String),
}

impl Cell {
    fn text(&self) -> String {
        match self {
            Cell::Blank => String::new(),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Blank => Value::Null,
            Cell::Int(n) => Value::from(*n),
            Cell::Text(s) => Value::from(s.as_str()),
        }
    }
}

impl From<u64> for Cell {
    fn from(n: u64) -> Self {
        Cell::Int(n)
    }
}

impl From<Option<u64>> for Cell {
    fn from(n: Option<u64>) -> Self {
        n.map_or(Cell::Blank, Cell::Int)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Table { columns: columns.into_iter().map(Into::into).collect(), ..Table::default() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Md => self.markdown(),
            Format::Json => self.json(),
        }
    }

    /// Comma separated, LF endings. Notes become trailing `#` lines.
    pub fn csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::text).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for note in &self.notes {
            let _ = writeln!(out, "# {note}");
        }
        out
    }

    pub fn markdown(&self) -> String {
        let mut out = format!("| {} |\n", self.columns.join(" | "));
        let rule: Vec<&str> = self.columns.iter().map(|_| "---:").collect();
        let _ = writeln!(out, "|{}|", rule.join("|"));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::text).collect();
            let _ = writeln!(out, "| {} |", cells.join(" | "));
        }
        for note in &self.notes {
            let _ = write!(out, "\n{note}\n");
        }
        out
    }

    /// `{"rows": [{column: value}], "notes": [...]}` with blanks as null.
    pub fn json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> =
                    self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("rows".into(), Value::Array(rows));
        if !self.notes.is_empty() {
            top.insert("notes".into(), Value::from(self.notes.clone()));
        }
        let mut out = serde_json::to_string_pretty(&Value::Object(top)).unwrap();
        out.push('\n');
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(["g", "a", "b"]);
        t.push(vec![Cell::Int(0), Cell::Int(1), Cell::Blank]);
        t.push(vec![Cell::Int(1), Cell::Text("2.50".into()), Cell::Int(0)]);
        t
    }

    #[test]
    fn csv_layout() {
        assert_eq!(sample().csv(), "g,a,b\n0,1,\n1,2.50,0\n");
    }

    #[test]
    fn markdown_layout() {
        let md = sample().markdown();
        assert!(md.starts_with("| g | a | b |\n|---:|---:|---:|\n| 0 | 1 |  |\n"));
    }

    #[test]
    fn json_layout() {
        let v: Value = serde_json::from_str(&sample().json()).unwrap();
        assert_eq!(v["rows"][0]["b"], Value::Null);
        assert_eq!(v["rows"][1]["a"], "2.50");
        assert_eq!(v["rows"][1]["b"], 0);
    }
}
