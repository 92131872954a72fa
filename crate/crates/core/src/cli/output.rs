use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::{Format, RunConfig};
use crate::Result;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(usize),
    Text(String),
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Num)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_owned())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // shortest round-trip form; exponent outside [1e-4, 1e15)
            Cell::Num(v) if *v == 0.0 || !v.is_finite() || (1e-4..1e15).contains(&v.abs()) => format!("{v}"),
            Cell::Num(v) => format!("{v:e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v).map_or(serde_json::Value::Null, Into::into),
            Cell::Int(v) => (*v).into(),
            Cell::Text(s) => s.clone().into(),
            Cell::Missing => serde_json::Value::Null,
        }
    }
}

/// One output file: named columns with units, plus optional comment lines.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<(&'static str, &'static str)>,
    pub notes: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, columns: &[(&'static str, &'static str)]) -> Self {
        Self {
            name: name.into(),
            columns: columns.to_vec(),
            notes: Vec::new(),
            rows: Vec::new(),
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "row width in {}", self.name);
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|(c, _)| *c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let units: Vec<String> = self.columns.iter().map(|(c, u)| format!("{c}={u}")).collect();
        let _ = writeln!(out, "# units: {}", units.join(", "));
        for n in &self.notes {
            let _ = writeln!(out, "# {n}");
        }
        let header: Vec<&str> = self.columns.iter().map(|(c, _)| *c).collect();
        let _ = writeln!(out, "{}", header.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::json!({
            "name": self.name,
            "columns": self.columns.iter().map(|(c, _)| *c).collect::<Vec<_>>(),
            "units": self.columns.iter().map(|(_, u)| *u).collect::<Vec<_>>(),
            "notes": self.notes,
            "rows": self.rows.iter().map(|r| r.iter().map(Cell::json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
        let mut s = serde_json::to_string_pretty(&value).expect("table serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

pub const MANIFEST_NAME: &str = "manifest.json";
pub const MANIFEST_VERSION: u32 = 1;

#[derive(Debug, Serialize)]
pub struct Tolerances {
    pub root_merge: f64,
    pub hyperbolic: f64,
    pub region_boundary: f64,
    pub hermitian: f64,
    pub lambda_match: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            root_merge: crate::classical::fixed_points::ROOT_MERGE_TOL,
            hyperbolic: crate::classical::fixed_points::HYPERBOLIC_TOL,
            region_boundary: crate::classical::region::BOUNDARY_TOL,
            hermitian: crate::spin::HERMITIAN_TOL,
            lambda_match: crate::quantum::matched::MATCH_TOL,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Manifest<'a> {
    pub manifest_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: &'a RunConfig,
    pub tolerances: Tolerances,
    /// Nothing in a run is random.
    pub seed: Option<u64>,
    pub files: Vec<String>,
}

/// Writes every table and the manifest into `config.output`, returning the
/// paths in write order.
pub fn write_run(config: &RunConfig, tables: &[Table]) -> Result<Vec<PathBuf>> {
    let dir = &config.output;
    fs::create_dir_all(dir)?;
    let mut written = Vec::with_capacity(tables.len() + 1);
    let mut files = Vec::with_capacity(tables.len());
    for t in tables {
        let file = format!("{}.{}", t.name, config.format.extension());
        let path = dir.join(&file);
        fs::write(&path, t.render(config.format))?;
        written.push(path);
        files.push(file);
    }
    let manifest = Manifest {
        manifest_version: MANIFEST_VERSION,
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config,
        tolerances: Tolerances::default(),
        seed: None,
        files,
    };
    let path = dir.join(MANIFEST_NAME);
    let mut json =
        serde_json::to_string_pretty(&manifest).map_err(|e| crate::Error::Numerical(e.to_string()))?;
    json.push('\n');
    fs::write(&path, json)?;
    written.push(path);
    Ok(written)
}

/// File-name-safe rendering of a number: `3.265` → `3.265`, `-1` → `m1`.
pub fn slug_number(v: f64) -> String {
    format!("{v}").replace('-', "m")
}

pub fn manifest_path(dir: &Path) -> PathBuf {
    dir.join(MANIFEST_NAME)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new("x", &[("Jt", "1/J"), ("alpha_max", "rad"), ("label", "-")]).note("series: a");
        t.push(vec![0.25.into(), None.into(), "a,b".into()]);
        t.push(vec![1e-5.into(), Some(0.5).into(), "c".into()]);
        assert_eq!(
            t.to_csv(),
            "# units: Jt=1/J, alpha_max=rad, label=-\n# series: a\nJt,alpha_max,label\n0.25,,\"a,b\"\n1e-5,0.5,c\n"
        );
        let v: serde_json::Value = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(v["rows"][0][1], serde_json::Value::Null);
        assert_eq!(v["units"][0], "1/J");
    }

    #[test]
    fn numbers_round_trip() {
        assert_eq!(Cell::Num(1.25e-15).csv(), "1.25e-15");
        assert_eq!(Cell::Num(-0.5).csv(), "-0.5");
        for v in [0.1, 1.0 / 3.0, 6.02e23, -2.5e-300, 1e-4, 9.99e-5] {
            assert_eq!(Cell::Num(v).csv().parse::<f64>().unwrap(), v);
        }
        assert_eq!(slug_number(-0.5), "m0.5");
    }
}
