use std::fmt::Write as _;

use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

/// Something printable in all three output formats.
pub trait Render: Serialize {
    fn table(&self) -> String;
}

pub fn render<T: Render>(value: &T, format: Format) -> Result<String> {
    Ok(match format {
        Format::Table => value.table(),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value)?;
            s.push('\n');
            s
        }
        Format::Csv => to_csv(std::slice::from_ref(value))?,
    })
}

pub fn render_rows<T: Serialize>(rows: &[T], format: Format, table: impl Fn(&[T]) -> String) -> Result<String> {
    Ok(match format {
        Format::Table => table(rows),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows)?;
            s.push('\n');
            s
        }
        Format::Csv => to_csv(rows)?,
    })
}

fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn key_values(pairs: &[(&str, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in pairs {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "-".into())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HlTableRow {
    pub m: u32,
    #[serde(rename = "N2")]
    pub n2: i64,
    pub m2: u64,
    pub s_ind: i64,
}

pub fn hl_table(rows: &[HlTableRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{:>4} {:>8} {:>8} {:>8}", "m", "N(2)", "m(2)", "s-ind");
    for r in rows {
        let _ = writeln!(out, "{:>4} {:>8} {:>8} {:>8}", r.m, r.n2, r.m2, r.s_ind);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexOut {
    pub label: String,
    pub m: u32,
    pub b0: u64,
    pub dim_g: u64,
    #[serde(rename = "N2")]
    pub n2: i64,
    pub m0: u64,
    pub m1: u64,
    pub m2: u64,
    pub s_ind: i64,
    pub stable: bool,
    pub rigid: bool,
    pub rate_sup: Option<String>,
    pub bound_violations: String,
}

impl Render for IndexOut {
    fn table(&self) -> String {
        key_values(&[
            ("cone", self.label.clone()),
            ("m", self.m.to_string()),
            ("b0", self.b0.to_string()),
            ("dim G", self.dim_g.to_string()),
            ("N(2)", self.n2.to_string()),
            ("m(0)", self.m0.to_string()),
            ("m(1)", self.m1.to_string()),
            ("m(2)", self.m2.to_string()),
            ("s-ind", self.s_ind.to_string()),
            ("stable", self.stable.to_string()),
            ("rigid", self.rigid.to_string()),
            ("rate sup", opt(&self.rate_sup)),
            (
                "bound violations",
                if self.bound_violations.is_empty() { "none".into() } else { self.bound_violations.clone() },
            ),
        ])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuliOut {
    pub n: usize,
    #[serde(rename = "dim_E")]
    pub dim_e: Option<i64>,
    #[serde(rename = "dim_K")]
    pub dim_k: i64,
    #[serde(rename = "dim_I")]
    pub dim_i: i64,
    #[serde(rename = "dim_O")]
    pub dim_o: i64,
    pub expected_dim: i64,
    pub all_stable: bool,
    pub family_dim: Option<u64>,
    pub family_case: Option<String>,
    pub family_expected_dim: Option<i64>,
    pub fiber_dim: Option<i64>,
    pub notes: String,
}

impl Render for ModuliOut {
    fn table(&self) -> String {
        key_values(&[
            ("singular points", self.n.to_string()),
            ("dim E", opt(&self.dim_e)),
            ("dim K", self.dim_k.to_string()),
            ("dim I", self.dim_i.to_string()),
            ("dim O", self.dim_o.to_string()),
            ("expected dim", self.expected_dim.to_string()),
            ("all stable", self.all_stable.to_string()),
            ("family dim d", opt(&self.family_dim)),
            ("family case", opt(&self.family_case)),
            ("family expected dim", opt(&self.family_expected_dim)),
            ("fibre dim", opt(&self.fiber_dim)),
            ("notes", self.notes.clone()),
        ])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FredholmOut {
    pub rates: String,
    pub fredholm: bool,
    pub index: Option<i64>,
    pub injective: bool,
    pub critical_points: String,
}

impl Render for FredholmOut {
    fn table(&self) -> String {
        key_values(&[
            ("rates", self.rates.clone()),
            ("fredholm", self.fredholm.to_string()),
            ("index", opt(&self.index)),
            ("injective", self.injective.to_string()),
            (
                "critical points",
                if self.critical_points.is_empty() { "none".into() } else { self.critical_points.clone() },
            ),
        ])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOut {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

pub fn check_table(rows: &[CheckOut]) -> String {
    let width = rows.iter().map(|r| r.check.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for r in rows {
        let status = if r.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{status}  {:<width$}  {}", r.check, r.detail);
    }
    let failed = rows.iter().filter(|r| !r.passed).count();
    let _ = writeln!(out, "{} checks, {} failed", rows.len(), failed);
    out
}
