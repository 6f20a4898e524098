//! Descriptive statistics of a sample read from CSV or simulated.

use std::io::Read;

use coskew_core::{
    build_event_mask, conditional_corr, coskew_matrix, pearson_corr, rank_coskewness, rank_transform, spearman_rho,
    EventSpec, Marginal, RankMode, TriSample,
};
use serde::Serialize;

use crate::error::{AppError, Result};

/// Reads a headed CSV of numeric columns.
pub fn read_sample<R: Read>(reader: R) -> Result<(Vec<String>, TriSample)> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let header: Vec<String> = rdr.headers()?.iter().map(str::to_string).collect();
    let mut columns = vec![Vec::new(); header.len()];
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec?;
        for (c, field) in rec.iter().enumerate() {
            let v: f64 = field
                .parse()
                .map_err(|_| AppError::Input(format!("row {}: column {}: not a number: {field:?}", line + 1, c + 1)))?;
            columns[c].push(v);
        }
    }
    if header.is_empty() {
        return Err(AppError::Input("no columns".into()));
    }
    Ok((header, TriSample::new(columns)?))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionalStats {
    pub event: String,
    pub pairs: Vec<[usize; 2]>,
    pub rho: Vec<f64>,
    pub event_rows: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StatsReport {
    pub columns: Vec<String>,
    pub n: usize,
    pub mean: Vec<f64>,
    pub sd: Vec<f64>,
    pub pearson: Vec<Vec<f64>>,
    pub spearman: Vec<Vec<f64>>,
    /// `d × d²` coskewness matrix, row-major.
    pub coskewness_matrix: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coskewness: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank_coskewness: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conditional: Option<ConditionalStats>,
}

/// Moments, correlations and coskewness of `x`. Ranks are empirical unless
/// `marginals` are given; exceedance thresholds follow the same rule.
pub fn compute_stats(
    columns: Vec<String>,
    x: &TriSample,
    marginals: Option<&[Marginal; 3]>,
    event: Option<EventSpec>,
) -> Result<StatsReport> {
    let d = x.d();
    let n = x.n();
    let mean: Vec<f64> = x.columns().iter().map(|c| c.iter().sum::<f64>() / n as f64).collect();
    let sd: Vec<f64> = x
        .columns()
        .iter()
        .zip(&mean)
        .map(|(c, m)| (c.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / n as f64).sqrt())
        .collect();
    let mode = |j: usize| match marginals {
        Some(ms) if d == 3 => RankMode::TrueCdf(ms[j]),
        _ => RankMode::Empirical,
    };
    let ranks: Vec<Vec<f64>> = (0..d).map(|j| rank_transform(x.column(j), mode(j))).collect();
    let mut pearson = vec![vec![1.0; d]; d];
    let mut spearman = vec![vec![1.0; d]; d];
    for i in 0..d {
        for j in i + 1..d {
            let p = pearson_corr(x.column(i), x.column(j))?;
            let s = spearman_rho(&ranks[i], &ranks[j])?;
            pearson[i][j] = p;
            pearson[j][i] = p;
            spearman[i][j] = s;
            spearman[j][i] = s;
        }
    }
    let m = coskew_matrix(x)?;
    let coskewness_matrix = (0..d).map(|r| (0..d * d).map(|c| m.at(r, c)).collect()).collect();
    let (coskewness, rank_coskewness) = if d == 3 {
        (Some(m.get(0, 1, 2)), Some(rank_coskewness(&ranks[0], &ranks[1], &ranks[2])?))
    } else {
        (None, None)
    };
    let conditional = match event {
        None => None,
        Some(ev) => {
            let pairs = vec![[0, 1], [0, 2], [1, 2]];
            let mut rho = Vec::new();
            let mut event_rows = Vec::new();
            for p in &pairs {
                let mask = build_event_mask(x, ev, (p[0], p[1]), marginals.map(|m| &m[..]))?;
                event_rows.push(mask.iter().filter(|&&b| b).count());
                rho.push(conditional_corr(x.column(p[0]), x.column(p[1]), &mask)?);
            }
            Some(ConditionalStats { event: ev.to_string(), pairs, rho, event_rows })
        }
    };
    Ok(StatsReport {
        columns,
        n,
        mean,
        sd,
        pearson,
        spearman,
        coskewness_matrix,
        coskewness,
        rank_coskewness,
        conditional,
    })
}
