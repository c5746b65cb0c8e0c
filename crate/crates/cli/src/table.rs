//! CSV result tables with a `#`-prefixed metadata header.
//!
//! Floats are written with 17 significant digits, so reading a table back
//! recovers every value bit for bit. The header echoes the full scenario as
//! TOML under `# config:`, which is enough to rerun it.

use std::fmt::Write as _;
use std::path::Path;

const CONFIG_MARKER: &str = "# config:";
const CONFIG_PREFIX: &str = "#   ";

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// `key = value` header lines, in order.
    pub metadata: Vec<(String, String)>,
    /// Scenario echo, TOML.
    pub config: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum TableError {
    #[error("row {row} has {got} fields, expected {expected}")]
    Ragged { row: usize, got: usize, expected: usize },
    #[error("line {line}: cannot parse `{field}` as a number")]
    Number { line: usize, field: String },
    #[error("missing column header")]
    NoHeader,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

impl ResultTable {
    pub fn new(columns: Vec<String>) -> Self {
        Self { columns, ..Default::default() }
    }

    pub fn push_meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.metadata.push((key.into(), value.to_string()));
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> Result<(), TableError> {
        if row.len() != self.columns.len() {
            return Err(TableError::Ragged { row: self.rows.len(), got: row.len(), expected: self.columns.len() });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k} = {v}");
        }
        if let Some(cfg) = &self.config {
            out.push_str(CONFIG_MARKER);
            out.push('\n');
            for line in cfg.lines() {
                let _ = writeln!(out, "{CONFIG_PREFIX}{line}");
            }
        }
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(|&v| format_float(v)).collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> Result<(), TableError> {
        std::fs::write(path, self.to_csv())?;
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self, TableError> {
        let mut table = ResultTable::default();
        let mut config: Option<String> = None;
        let mut header = false;
        for (lineno, line) in text.lines().enumerate() {
            if let Some(rest) = line.strip_prefix('#') {
                if line == CONFIG_MARKER {
                    config = Some(String::new());
                } else if let (Some(cfg), Some(body)) = (config.as_mut(), line.strip_prefix(CONFIG_PREFIX)) {
                    cfg.push_str(body);
                    cfg.push('\n');
                } else if let Some((k, v)) = rest.trim_start().split_once(" = ") {
                    table.metadata.push((k.to_string(), v.to_string()));
                }
                continue;
            }
            if !header {
                table.columns = line.split(',').map(str::to_string).collect();
                header = true;
                continue;
            }
            let row = line
                .split(',')
                .map(|f| f.parse::<f64>().map_err(|_| TableError::Number { line: lineno + 1, field: f.to_string() }))
                .collect::<Result<Vec<_>, _>>()?;
            table.push_row(row)?;
        }
        if !header {
            return Err(TableError::NoHeader);
        }
        table.config = config;
        Ok(table)
    }

    pub fn read(path: &Path) -> Result<Self, TableError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }
}
