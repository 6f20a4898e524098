//! CSV and JSON rendering of reports.
//!
//! Reals are written with 17 significant digits in scientific notation so
//! the CSV output is locale-free and round-trips exactly.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use coskew_core::{BoundsResult, Marginal, TriSample};
use serde::Serialize;

use crate::error::Result;
use crate::experiments::{Example1Report, ExperimentReport, Metadata, VerifyReport};
use crate::stats::StatsReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format {s:?} (expected csv or json)")),
        }
    }
}

/// `{experiment}-{seed}.{csv|json}`.
pub fn file_name(experiment: &str, seed: u64, format: Format) -> String {
    format!("{experiment}-{seed}.{}", format.extension())
}

pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_real(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

/// A report renderable as one CSV table.
pub trait Table {
    fn header(&self) -> Vec<String>;
    fn records(&self) -> Vec<Vec<String>>;
}

pub fn write_csv<W: Write>(table: &dyn Table, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(table.header())?;
    for r in table.records() {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write, T: Serialize + ?Sized>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn to_csv_bytes(table: &dyn Table) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    write_csv(table, &mut buf)?;
    Ok(buf)
}

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn metadata_header() -> Vec<String> {
    strings(&["experiment", "seed", "stream", "n", "marginal1", "marginal2", "marginal3"])
}

fn metadata_fields(m: &Metadata) -> Vec<String> {
    let mut v = vec![m.experiment.clone(), m.seed.to_string(), m.stream.to_string(), m.n.to_string()];
    for k in 0..3 {
        v.push(m.marginals.get(k).cloned().unwrap_or_default());
    }
    v
}

impl Table for ExperimentReport {
    fn header(&self) -> Vec<String> {
        let mut h = metadata_header();
        h.extend(strings(&[
            "copula",
            "event",
            "lambda",
            "coskewness_hat",
            "coskewness_predicted",
            "rho12_hat",
            "rho13_hat",
            "rho23_hat",
        ]));
        if self.rows.iter().any(|r| r.conditional.is_some()) {
            h.extend(strings(&["cond_rho12", "cond_rho13", "cond_rho23", "event_rows", "all_rows_rho12"]));
        }
        h
    }

    fn records(&self) -> Vec<Vec<String>> {
        let conditional = self.rows.iter().any(|r| r.conditional.is_some());
        self.rows
            .iter()
            .map(|r| {
                let mut v = metadata_fields(&self.metadata);
                v.push(format!("mixture:{}", r.lambda));
                v.push(self.metadata.event.clone().unwrap_or_default());
                v.extend([
                    real(r.lambda),
                    real(r.coskewness_hat),
                    opt_real(r.coskewness_predicted),
                    real(r.rho12_hat),
                    real(r.rho13_hat),
                    real(r.rho23_hat),
                ]);
                if conditional {
                    match r.conditional {
                        Some(c) => v.extend([
                            real(c.rho12),
                            real(c.rho13),
                            real(c.rho23),
                            c.event_rows.to_string(),
                            real(c.rho12_all_rows),
                        ]),
                        None => v.extend(std::iter::repeat_n(String::new(), 5)),
                    }
                }
                v
            })
            .collect()
    }
}

impl Table for Example1Report {
    fn header(&self) -> Vec<String> {
        let mut h = metadata_header();
        h.extend(strings(&[
            "copula",
            "rs_hat",
            "rs_exact",
            "rho12_s_hat",
            "rho13_s_hat",
            "rho23_s_hat",
            "rho12_s_exact",
            "rho13_s_exact",
            "rho23_s_exact",
            "rho12_s_reported",
            "rho13_s_reported",
            "rho23_s_reported",
            "discrepancy",
        ]));
        h
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.rows
            .iter()
            .map(|r| {
                let mut v = metadata_fields(&self.metadata);
                v.push(r.copula.clone());
                v.push(real(r.rs_hat));
                v.push(real(r.rs_exact));
                v.extend(r.rho_s_hat.map(real));
                v.extend(r.rho_s_exact.map(real));
                match r.rho_s_reported {
                    Some(p) => v.extend(p.map(real)),
                    None => v.extend([String::new(), String::new(), String::new()]),
                }
                v.push(r.discrepancy.to_string());
                v
            })
            .collect()
    }
}

impl Table for VerifyReport {
    fn header(&self) -> Vec<String> {
        let mut h = metadata_header();
        h.extend(strings(&["check", "name", "passed", "detail"]));
        h
    }

    fn records(&self) -> Vec<Vec<String>> {
        self.checks
            .iter()
            .map(|c| {
                let mut v = metadata_fields(&self.metadata);
                v.extend([c.id.to_string(), c.name.clone(), c.passed.to_string(), c.detail.clone()]);
                v
            })
            .collect()
    }
}

/// Bounds for one marginal triple.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundsReport {
    pub marginals: Vec<String>,
    pub s_max: f64,
    pub s_min: f64,
    pub quadrature_error: f64,
}

impl BoundsReport {
    pub fn new(marginals: &[Marginal; 3], b: &BoundsResult) -> Self {
        BoundsReport {
            marginals: marginals.iter().map(ToString::to_string).collect(),
            s_max: b.s_max,
            s_min: b.s_min,
            quadrature_error: b.quadrature_error,
        }
    }
}

impl Table for BoundsReport {
    fn header(&self) -> Vec<String> {
        strings(&["marginal1", "marginal2", "marginal3", "s_max", "s_min", "quadrature_error"])
    }

    fn records(&self) -> Vec<Vec<String>> {
        let mut v = self.marginals.clone();
        v.extend([real(self.s_max), real(self.s_min), real(self.quadrature_error)]);
        vec![v]
    }
}

/// Simulated data columns `x1, x2, …`.
pub struct SampleTable<'a>(pub &'a TriSample);

impl Table for SampleTable<'_> {
    fn header(&self) -> Vec<String> {
        (1..=self.0.d()).map(|j| format!("x{j}")).collect()
    }

    fn records(&self) -> Vec<Vec<String>> {
        (0..self.0.n()).map(|r| self.0.columns().iter().map(|c| real(c[r])).collect()).collect()
    }
}

#[derive(Serialize)]
pub struct SampleJson<'a> {
    pub metadata: &'a Metadata,
    pub columns: &'a [Vec<f64>],
}

/// Long format: one `statistic, i, j, k, value` line per entry.
impl Table for StatsReport {
    fn header(&self) -> Vec<String> {
        strings(&["statistic", "i", "j", "k", "value"])
    }

    fn records(&self) -> Vec<Vec<String>> {
        let d = self.columns.len();
        let line = |s: &str, i: Option<usize>, j: Option<usize>, k: Option<usize>, v: f64| {
            let idx = |x: Option<usize>| x.map(|x| (x + 1).to_string()).unwrap_or_default();
            vec![s.to_string(), idx(i), idx(j), idx(k), real(v)]
        };
        let mut out = vec![vec!["n".to_string(), String::new(), String::new(), String::new(), self.n.to_string()]];
        for i in 0..d {
            out.push(line("mean", Some(i), None, None, self.mean[i]));
            out.push(line("sd", Some(i), None, None, self.sd[i]));
        }
        for i in 0..d {
            for j in i + 1..d {
                out.push(line("pearson", Some(i), Some(j), None, self.pearson[i][j]));
                out.push(line("spearman", Some(i), Some(j), None, self.spearman[i][j]));
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    out.push(line("coskewness", Some(i), Some(j), Some(k), self.coskewness_matrix[i][j * d + k]));
                }
            }
        }
        if let Some(rs) = self.rank_coskewness {
            out.push(line("rank_coskewness", Some(0), Some(1), Some(2), rs));
        }
        if let Some(c) = &self.conditional {
            for (p, r) in c.pairs.iter().zip(&c.rho) {
                out.push(line(&format!("conditional:{}", c.event), Some(p[0]), Some(p[1]), None, *r));
            }
        }
        out
    }
}
