//! Tables, text dumps and the float convention shared by every output:
//! 17 significant digits in scientific notation, enough to round-trip `f64`.

use std::fmt::Write as _;

use nbspec_core::chebyshev::ExactPolynomial;
use nbspec_core::dense::{ComplexMatrix, IntegerMatrix, RealMatrix};
use nbspec_core::spectra::{DiscreteSpectralMeasure, ReferenceLaw};
use nbspec_core::WalkCensus;
use serde_json::{json, Value};

pub fn float(x: f64) -> String {
    format!("{x:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i128),
    Float(f64),
    Text(String),
    Missing,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => float(*v),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => i64::try_from(*v).map_or_else(|_| Value::String(v.to_string()), Value::from),
            Cell::Float(v) if v.is_finite() => Value::from(*v),
            Cell::Float(v) => Value::String(v.to_string()),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Missing => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i128> for Cell {
    fn from(v: i128) -> Self {
        Cell::Int(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Text(if v { "pass" } else { "fail" }.into())
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.into())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Missing, Into::into)
    }
}

/// A named rectangular table. The manifest hash column is appended only when
/// rendering, so it never has to be threaded through the experiments.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

pub const HASH_COLUMN: &str = "manifest_hash";

impl Table {
    pub fn new(name: impl Into<String>, columns: &[&str]) -> Self {
        Self { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width does not match table `{}`", self.name);
        self.rows.push(row);
    }

    pub fn to_csv(&self, manifest_hash: &str) -> String {
        let mut out = self.columns.join(",");
        writeln!(out, ",{HASH_COLUMN}").unwrap();
        for row in &self.rows {
            for cell in row {
                out.push_str(&cell.csv());
                out.push(',');
            }
            out.push_str(manifest_hash);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, manifest_hash: &str) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (col, cell) in self.columns.iter().zip(row) {
                    obj.insert(col.clone(), cell.json());
                }
                obj.insert(HASH_COLUMN.into(), manifest_hash.into());
                Value::Object(obj)
            })
            .collect();
        json!({ "name": self.name, "columns": self.columns, "rows": rows })
    }
}

/// `r,f,c,z` for `r = 1..=r_max`; `z` is blank past the enumeration cap.
pub fn census_table(census: &WalkCensus) -> Table {
    let mut t = Table::new("census", &["r", "f", "c", "z"]);
    for r in 1..=census.r_max {
        let z = census.z.as_ref().map(|z| z[r]);
        t.push(vec![r.into(), census.f[r].into(), census.c[r].into(), z.into()]);
    }
    t
}

/// `r,k,coefficient` with exact rational coefficients, zeros omitted.
pub fn coefficient_table(name: &str, family: &[ExactPolynomial]) -> Table {
    let mut t = Table::new(name, &["r", "k", "coefficient"]);
    for (r, p) in family.iter().enumerate() {
        for (k, c) in p.coeffs().iter().enumerate() {
            let c = c.to_string();
            if c != "0" {
                t.push(vec![r.into(), k.into(), c.into()]);
            }
        }
    }
    t
}

pub fn measure_table(name: &str, mu: &DiscreteSpectralMeasure) -> Table {
    let mut t = Table::new(name, &["index", "point"]);
    for (i, &x) in mu.points().iter().enumerate() {
        t.push(vec![i.into(), x.into()]);
    }
    t
}

/// `x,density,cdf` on `grid_points` equally spaced abscissae spanning `[-2, 2]`.
pub fn law_table(name: &str, law: &ReferenceLaw, grid_points: usize) -> Table {
    let mut t = Table::new(name, &["x", "density", "cdf"]);
    let steps = grid_points.max(2) - 1;
    for i in 0..=steps {
        let x = -2.0 + 4.0 * i as f64 / steps as f64;
        t.push(vec![x.into(), law.density(x).into(), law.cdf(x).into()]);
    }
    t
}

fn dump<T>(order: usize, entries: &[T], mut entry: impl FnMut(&T) -> String) -> String {
    let mut out = format!("{order}\n");
    for row in entries.chunks(order.max(1)) {
        let line: Vec<String> = row.iter().map(&mut entry).collect();
        writeln!(out, "{}", line.join(" ")).unwrap();
    }
    out
}

/// The order on its own line, then one line of space-separated entries per row.
pub fn dump_integer_matrix(m: &IntegerMatrix) -> String {
    dump(m.order(), m.as_slice(), |v| v.to_string())
}

pub fn dump_real_matrix(m: &RealMatrix) -> String {
    dump(m.order(), m.as_slice(), |v| float(*v))
}

/// Complex entries are written `re,im`.
pub fn dump_complex_matrix(m: &ComplexMatrix) -> String {
    dump(m.order(), m.as_slice(), |z| format!("{},{}", float(z.re), float(z.im)))
}
