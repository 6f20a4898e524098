//! Simulation drivers: the mixture-copula pipeline, the coskewness and
//! downside-correlation sweeps over λ, the rank-statistics examples and a
//! suite of property checks.

use std::time::Instant;

use coskew_core::analytic::quadrature;
use coskew_core::copulas::{
    mixing_sum_row, sample_comonotonic, sample_gaussian, sample_independence, sample_mixing_sum, sample_mixture,
};
use coskew_core::rng::{Substream, UniformStream};
use coskew_core::{
    build_event_mask, conditional_corr, coskew_bound, coskewness, mixture_prediction, pearson_corr,
    rank_coskew_gaussian, rank_coskewness, rank_transform, spearman_from_pearson_gaussian, spearman_rho, to_data,
    BoundsResult, Error, EventSpec, GaussianParams, Marginal, RankMode, Result, SeedSpec, TriSample, USample,
};
use rayon::prelude::*;
use serde::Serialize;

pub const DEFAULT_N: usize = 100_000;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_GRID_POINTS: usize = 11;

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// `points` equally spaced values on `[0, 1]`.
pub fn uniform_grid(points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..points).map(|k| k as f64 / (points - 1) as f64).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub lambda_grid: Vec<f64>,
    pub marginals: [Marginal; 3],
    pub seed: SeedSpec,
    pub event: EventSpec,
}

impl ExperimentConfig {
    pub fn new(marginals: [Marginal; 3]) -> Self {
        ExperimentConfig {
            n: DEFAULT_N,
            lambda_grid: uniform_grid(DEFAULT_GRID_POINTS),
            marginals,
            seed: SeedSpec::new(DEFAULT_SEED, 0),
            event: EventSpec::DownsideSum,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::TooFewRows { required: 2, got: self.n });
        }
        if self.lambda_grid.is_empty() {
            return Err(Error::Dimension { required: "non-empty lambda grid", got: 0 });
        }
        for &l in &self.lambda_grid {
            if !(0.0..=1.0).contains(&l) {
                return Err(Error::InvalidParameter { name: "lambda", value: l });
            }
        }
        if let Some(w) = self.lambda_grid.windows(2).find(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidParameter { name: "lambda grid (ascending)", value: w[1] });
        }
        self.event.validate()
    }

    fn symmetric(&self) -> bool {
        self.marginals.iter().all(Marginal::is_symmetric)
    }

    fn bounds(&self) -> Result<Option<BoundsResult>> {
        if self.symmetric() {
            coskew_bound(&self.marginals).map(Some)
        } else {
            Ok(None)
        }
    }
}

/// Event-conditional correlations for the three pairs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConditionalCorr {
    pub rho12: f64,
    pub rho13: f64,
    pub rho23: f64,
    /// Rows selected by the event for pair (1, 2).
    pub event_rows: usize,
    /// Pair (1, 2) correlation under a mask that keeps every row.
    pub rho12_all_rows: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportRow {
    pub lambda: f64,
    pub coskewness_hat: f64,
    pub coskewness_predicted: Option<f64>,
    pub rho12_hat: f64,
    pub rho13_hat: f64,
    pub rho23_hat: f64,
    pub conditional: Option<ConditionalCorr>,
}

impl ReportRow {
    pub fn rho_hat(&self) -> [f64; 3] {
        [self.rho12_hat, self.rho13_hat, self.rho23_hat]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub experiment: String,
    pub seed: u64,
    pub stream: u64,
    pub n: usize,
    pub marginals: Vec<String>,
    pub copula: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub event: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<f64>,
}

impl Metadata {
    pub fn new(experiment: &str, n: usize, seed: SeedSpec, marginals: &[Marginal], copula: &str) -> Self {
        Metadata {
            experiment: experiment.to_string(),
            seed: seed.seed,
            stream: seed.stream,
            n,
            marginals: marginals.iter().map(ToString::to_string).collect(),
            copula: copula.to_string(),
            event: None,
            runtime_seconds: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub metadata: Metadata,
    pub rows: Vec<ReportRow>,
}

impl ExperimentReport {
    pub fn coskewness_fit(&self) -> Option<(f64, f64)> {
        let xs: Vec<f64> = self.rows.iter().map(|r| r.lambda).collect();
        let ys: Vec<f64> = self.rows.iter().map(|r| r.coskewness_hat).collect();
        linear_fit(&xs, &ys)
    }
}

/// Ordinary least-squares `(slope, intercept)`; `None` when `xs` is constant
/// or the lengths differ.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> Option<(f64, f64)> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// Spearman correlation (Pearson correlation of midranks) between the
/// position in `values` and the values.
pub fn trend_statistic(values: &[f64]) -> Result<f64> {
    let idx: Vec<f64> = (0..values.len()).map(|i| i as f64).collect();
    let a = rank_transform(&idx, RankMode::Empirical);
    let b = rank_transform(values, RankMode::Empirical);
    pearson_corr(&a, &b)
}

fn pairwise_pearson(x: &TriSample) -> Result<[f64; 3]> {
    let mut out = [0.0; 3];
    for (o, &(i, j)) in out.iter_mut().zip(&PAIRS) {
        *o = pearson_corr(x.column(i), x.column(j))?;
    }
    Ok(out)
}

fn mixture_data(cfg: &ExperimentConfig, lambda: f64) -> Result<TriSample> {
    let us = sample_mixture(cfg.n, lambda, cfg.seed)?;
    to_data(&us, &cfg.marginals)
}

fn row_from_data(x: &TriSample, lambda: f64, bounds: Option<&BoundsResult>) -> Result<ReportRow> {
    let rho = pairwise_pearson(x)?;
    Ok(ReportRow {
        lambda,
        coskewness_hat: coskewness(x.column(0), x.column(1), x.column(2))?,
        coskewness_predicted: bounds.map(|b| mixture_prediction(lambda, b)).transpose()?,
        rho12_hat: rho[0],
        rho13_hat: rho[1],
        rho23_hat: rho[2],
        conditional: None,
    })
}

/// One pass of the mixture pipeline: draw `(u, v, w)`, build the max and
/// min coskewness copulas, mix the third coordinate with `B = 1{w < λ}`,
/// map through the marginal quantiles and estimate correlations and
/// coskewness.
pub fn run_algorithm1(cfg: &ExperimentConfig, lambda: f64) -> Result<ReportRow> {
    cfg.validate()?;
    let bounds = cfg.bounds()?;
    row_from_data(&mixture_data(cfg, lambda)?, lambda, bounds.as_ref())
}

fn sweep_metadata(name: &str, cfg: &ExperimentConfig) -> Metadata {
    Metadata::new(name, cfg.n, cfg.seed, &cfg.marginals, "mixture")
}

/// Coskewness against λ over the grid, all grid points sharing the same
/// uniform substreams.
pub fn run_figure1(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    cfg.validate()?;
    if let Some(m) = cfg.marginals.iter().find(|m| !m.is_symmetric()) {
        return Err(Error::UnsupportedMarginal(m.name()));
    }
    let bounds = cfg.bounds()?;
    let rows = cfg
        .lambda_grid
        .par_iter()
        .map(|&l| row_from_data(&mixture_data(cfg, l)?, l, bounds.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let mut metadata = sweep_metadata("figure1", cfg);
    metadata.runtime_seconds = Some(start.elapsed().as_secs_f64());
    Ok(ExperimentReport { metadata, rows })
}

fn conditional_row(x: &TriSample, cfg: &ExperimentConfig) -> Result<ConditionalCorr> {
    let mut rho = [0.0; 3];
    let mut event_rows = 0;
    let shared = match cfg.event {
        EventSpec::DownsideSum => Some(build_event_mask(x, cfg.event, (0, 1), None)?),
        _ => None,
    };
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        let mask = match &shared {
            Some(m) => m.clone(),
            None => build_event_mask(x, cfg.event, (i, j), Some(&cfg.marginals))?,
        };
        if k == 0 {
            event_rows = mask.iter().filter(|&&b| b).count();
        }
        rho[k] = conditional_corr(x.column(i), x.column(j), &mask)?;
    }
    let all = vec![true; x.n()];
    Ok(ConditionalCorr {
        rho12: rho[0],
        rho13: rho[1],
        rho23: rho[2],
        event_rows,
        rho12_all_rows: conditional_corr(x.column(0), x.column(1), &all)?,
    })
}

/// Event-conditional pairwise correlations against λ.
pub fn run_figure2(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let start = Instant::now();
    cfg.validate()?;
    let bounds = cfg.bounds()?;
    let rows = cfg
        .lambda_grid
        .par_iter()
        .map(|&l| {
            let x = mixture_data(cfg, l)?;
            let mut row = row_from_data(&x, l, bounds.as_ref())?;
            row.conditional = Some(conditional_row(&x, cfg)?);
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut metadata = sweep_metadata("figure2", cfg);
    metadata.event = Some(cfg.event.to_string());
    metadata.runtime_seconds = Some(start.elapsed().as_secs_f64());
    Ok(ExperimentReport { metadata, rows })
}

/// Simulated and exact rank statistics for one copula.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Example1Row {
    pub copula: String,
    pub rs_hat: f64,
    pub rs_exact: f64,
    pub rho_s_hat: [f64; 3],
    pub rho_s_exact: [f64; 3],
    /// Values printed in the literature, where they differ from `rho_s_exact`.
    pub rho_s_reported: Option<[f64; 3]>,
    pub discrepancy: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Example1Report {
    pub metadata: Metadata,
    pub rows: Vec<Example1Row>,
}

/// Rank statistics of a copula `u -> (u, g₂(u), g₃(u))` driven by a single
/// uniform, integrated piecewise on `[0, ½]` and `[½, 1]`.
fn single_factor_exact(g: impl Fn(f64) -> [f64; 3]) -> (f64, [f64; 3]) {
    let integral = |f: &dyn Fn(f64) -> f64| {
        let lo = quadrature::integrate(f, 0.0, 0.5, 1e-14, 200);
        let hi = quadrature::integrate(f, 0.5, 1.0, 1e-14, 200);
        lo.value + hi.value
    };
    let c = |u: f64| g(u).map(|v| v - 0.5);
    let rs = 32.0
        * integral(&|u| {
            let w = c(u);
            w[0] * w[1] * w[2]
        });
    let rho = PAIRS.map(|(i, j)| {
        12.0 * integral(&|u| {
            let w = c(u);
            w[i] * w[j]
        })
    });
    (rs, rho)
}

/// Exponential(1) marginals are used so that the TrueCdf ranks pass through
/// a non-trivial transform.
pub fn run_example1(n: usize, seed: SeedSpec) -> Result<Example1Report> {
    let start = Instant::now();
    let marginals = [Marginal::exponential(1.0)?; 3];
    let comonotonic = single_factor_exact(|u| [u, u, u]);
    let mixing = single_factor_exact(mixing_sum_row);
    // E(U - ½) = 0 factorizes every product moment under independence.
    let centred = quadrature::integrate(|u| u - 0.5, 0.0, 1.0, 1e-14, 10).value;
    let independence = (32.0 * centred * centred * centred, [12.0 * centred * centred; 3]);

    type Case = (USample, (f64, [f64; 3]), Option<[f64; 3]>);
    let cases: [Case; 3] = [
        (sample_comonotonic(n, seed)?, comonotonic, None),
        (sample_mixing_sum(n, seed)?, mixing, Some([-1.0, 1.0, -1.0])),
        (sample_independence(n, seed)?, independence, None),
    ];
    let mut rows = Vec::new();
    for (us, (rs_exact, rho_s_exact), reported) in cases {
        let x = to_data(&us, &marginals)?;
        let r = [0, 1, 2].map(|j| rank_transform(x.column(j), RankMode::TrueCdf(marginals[j])));
        let mut rho_s_hat = [0.0; 3];
        for (o, &(i, j)) in rho_s_hat.iter_mut().zip(&PAIRS) {
            *o = spearman_rho(&r[i], &r[j])?;
        }
        let discrepancy =
            reported.map(|p| p.iter().zip(&rho_s_exact).any(|(a, b)| (a - b).abs() > 1e-9)).unwrap_or(false);
        rows.push(Example1Row {
            copula: us.spec.to_string(),
            rs_hat: rank_coskewness(&r[0], &r[1], &r[2])?,
            rs_exact,
            rho_s_hat,
            rho_s_exact,
            rho_s_reported: reported,
            discrepancy,
        });
    }
    let mut metadata = Metadata::new("example1", n, seed, &marginals, "comonotonic,mixingsum,independence");
    metadata.runtime_seconds = Some(start.elapsed().as_secs_f64());
    Ok(Example1Report { metadata, rows })
}

/// Outcome of one property check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub metadata: Metadata,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub const CORR_TOL: f64 = 0.02;
pub const COSKEW_TOL: f64 = 0.05;
pub const RS_TOL: f64 = 0.03;
pub const ANALYTIC_TOL: f64 = 1e-12;

pub const GAUSSIAN_TRIPLES: [(f64, f64, f64); 3] = [(0.0, 0.0, 0.0), (0.8, 0.5, 0.3), (-0.5, 0.4, -0.3)];
const EXTRA_TRIPLES: [(f64, f64, f64); 3] = [(0.9, 0.7, 0.6), (-0.3, -0.3, -0.3), (0.2, -0.6, 0.5)];

fn max_abs(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m, v| if v.abs() > m || v.is_nan() { v.abs() } else { m })
}

fn check(id: u8, name: &str, passed: bool, detail: String) -> Check {
    Check { id, name: name.to_string(), passed, detail }
}

fn exponential_ranks(us: &USample) -> Result<[Vec<f64>; 3]> {
    let e = Marginal::exponential(1.0)?;
    let x = to_data(us, &[e; 3])?;
    Ok([0, 1, 2].map(|j| rank_transform(x.column(j), RankMode::TrueCdf(e))))
}

fn pairwise_spearman(r: &[Vec<f64>; 3]) -> Result<[f64; 3]> {
    let mut out = [0.0; 3];
    for (o, &(i, j)) in out.iter_mut().zip(&PAIRS) {
        *o = spearman_rho(&r[i], &r[j])?;
    }
    Ok(out)
}

/// Gaussian triple: `(max |Ŝ|, max |ρ̂ - ρ|)` under normal marginals.
pub fn gaussian_moments(n: usize, seed: SeedSpec, triples: &[(f64, f64, f64)]) -> Result<(f64, f64)> {
    let mut s_max = 0.0f64;
    let mut rho_err = 0.0f64;
    for &(a, b, c) in triples {
        let us = sample_gaussian(n, &GaussianParams::new(a, b, c)?, seed)?;
        let x = to_data(&us, &[Marginal::StandardNormal; 3])?;
        s_max = s_max.max(coskewness(x.column(0), x.column(1), x.column(2))?.abs());
        let rho = pairwise_pearson(&x)?;
        rho_err = rho_err.max(max_abs(rho.iter().zip([a, b, c]).map(|(r, t)| r - t)));
    }
    Ok((s_max, rho_err))
}

/// Mixture copula under Exponential(1) marginals:
/// `(max |ρ̂ˢ|, max |RS - (2λ - 1)|)` over `lambdas`.
pub fn mixture_rank_stats(n: usize, seed: SeedSpec, lambdas: &[f64]) -> Result<(f64, f64)> {
    let mut rho_s = 0.0f64;
    let mut rs_err = 0.0f64;
    for &l in lambdas {
        let r = exponential_ranks(&sample_mixture(n, l, seed)?)?;
        rho_s = rho_s.max(max_abs(pairwise_spearman(&r)?));
        rs_err = rs_err.max((rank_coskewness(&r[0], &r[1], &r[2])? - (2.0 * l - 1.0)).abs());
    }
    Ok((rho_s, rs_err))
}

/// Largest `|RS|` of the Gaussian copula with Exponential(1) marginals.
pub fn gaussian_rank_coskew(n: usize, seed: SeedSpec, triples: &[(f64, f64, f64)]) -> Result<f64> {
    let mut out = 0.0f64;
    for &(a, b, c) in triples {
        let r = exponential_ranks(&sample_gaussian(n, &GaussianParams::new(a, b, c)?, seed)?)?;
        out = out.max(rank_coskewness(&r[0], &r[1], &r[2])?.abs());
    }
    Ok(out)
}

/// Largest `|rank_coskew_gaussian|` over `count` random valid triples.
pub fn analytic_rank_coskew_max(count: usize, seed: SeedSpec) -> f64 {
    let mut r = UniformStream::new(seed, Substream::U);
    let mut worst = 0.0f64;
    let mut done = 0;
    while done < count {
        let t = [r.next_open01(), r.next_open01(), r.next_open01()].map(|u| 2.0 * u - 1.0);
        if let Ok(v) = rank_coskew_gaussian(t[0], t[1], t[2]) {
            worst = worst.max(v.abs());
            done += 1;
        }
    }
    worst
}

/// Runs the property suite; failures are reported in the returned checks.
pub fn verify_propositions(n: usize, seed: SeedSpec) -> Result<VerifyReport> {
    let start = Instant::now();
    let normals = [Marginal::StandardNormal; 3];
    let mut checks = Vec::new();
    let cfg = |marginals: [Marginal; 3], grid: Vec<f64>| ExperimentConfig {
        n,
        lambda_grid: grid,
        marginals,
        seed,
        event: EventSpec::DownsideSum,
    };

    // 1. Any attainable coskewness with zero correlation.
    let b = coskew_bound(&normals)?;
    let targets = [b.s_min, 0.5 * b.s_min, 0.0, 0.5 * b.s_max, b.s_max];
    let grid: Vec<f64> = targets.iter().map(|s| (s - b.s_min) / (b.s_max - b.s_min)).collect();
    let rep = run_figure1(&cfg(normals, grid))?;
    let s_err = max_abs(rep.rows.iter().zip(&targets).map(|(r, t)| r.coskewness_hat - t));
    let rho = max_abs(rep.rows.iter().flat_map(|r| r.rho_hat()));
    checks.push(check(
        1,
        "zero-correlation-any-coskewness",
        s_err < COSKEW_TOL && rho < CORR_TOL,
        format!("max|S-target|={s_err:.4} max|rho|={rho:.4} over {} targets", targets.len()),
    ));

    // 2. Any correlation with zero coskewness.
    let (s, rho_err) = gaussian_moments(n, seed, &EXTRA_TRIPLES)?;
    checks.push(check(
        2,
        "zero-coskewness-any-correlation",
        s < COSKEW_TOL && rho_err < CORR_TOL,
        format!("max|S|={s:.4} max|rho-target|={rho_err:.4}"),
    ));

    // 3. Mixture coskewness is affine in lambda.
    let rep = run_figure1(&cfg(normals, uniform_grid(DEFAULT_GRID_POINTS)))?;
    let dev = max_abs(rep.rows.iter().map(|r| r.coskewness_hat - r.coskewness_predicted.unwrap_or(f64::NAN)));
    let (slope, intercept) = rep.coskewness_fit().unwrap_or((f64::NAN, f64::NAN));
    checks.push(check(
        3,
        "mixture-coskewness-affine",
        dev < COSKEW_TOL && (slope - 2.0 * b.s_max).abs() < 0.1,
        format!("max|S-pred|={dev:.4} slope={slope:.4} intercept={intercept:.4} 2*Smax={:.4}", 2.0 * b.s_max),
    ));

    // 4. Mixture correlations vanish for other symmetric marginals.
    let rep = run_figure1(&cfg([Marginal::Laplace; 3], vec![0.0, 0.5, 1.0]))?;
    let rho = max_abs(rep.rows.iter().flat_map(|r| r.rho_hat()));
    checks.push(check(4, "mixture-zero-correlation", rho < CORR_TOL, format!("laplace max|rho|={rho:.4}")));

    // 5. Gaussian model has zero coskewness.
    let (s, rho_err) = gaussian_moments(n, seed, &GAUSSIAN_TRIPLES)?;
    checks.push(check(
        5,
        "gaussian-zero-coskewness",
        s < COSKEW_TOL && rho_err < CORR_TOL,
        format!("max|S|={s:.4} max|rho-target|={rho_err:.4}"),
    ));

    // 6. Any rank correlation with zero rank coskewness.
    let mut rs = 0.0f64;
    let mut rho_s_err = 0.0f64;
    for &(a, bb, c) in EXTRA_TRIPLES.iter().chain(&GAUSSIAN_TRIPLES) {
        let r = exponential_ranks(&sample_gaussian(n, &GaussianParams::new(a, bb, c)?, seed)?)?;
        rs = rs.max(rank_coskewness(&r[0], &r[1], &r[2])?.abs());
        let target = [a, bb, c].map(|p| spearman_from_pearson_gaussian(p).expect("valid correlation"));
        let got = pairwise_spearman(&r)?;
        rho_s_err = rho_s_err.max(max_abs(got.iter().zip(target).map(|(g, t)| g - t)));
    }
    checks.push(check(
        6,
        "zero-rank-coskewness-any-rank-correlation",
        rs < CORR_TOL && rho_s_err < CORR_TOL,
        format!("max|RS|={rs:.4} max|rhoS-arcsine|={rho_s_err:.4}"),
    ));

    // 7. Mixture rank statistics with non-symmetric marginals.
    let (rho_s, rs_err) = mixture_rank_stats(n, seed, &[0.0, 0.25, 0.5, 0.75, 1.0])?;
    checks.push(check(
        7,
        "mixture-rank-coskewness-spans",
        rho_s < CORR_TOL && rs_err < RS_TOL,
        format!("max|rhoS|={rho_s:.4} max|RS-(2l-1)|={rs_err:.4}"),
    ));

    // 8. Gaussian copula has zero rank coskewness.
    let analytic = analytic_rank_coskew_max(1000, seed);
    let simulated = gaussian_rank_coskew(n, seed, &[(0.8, 0.5, 0.3)])?;
    checks.push(check(
        8,
        "gaussian-copula-zero-rank-coskewness",
        analytic < ANALYTIC_TOL && simulated < CORR_TOL,
        format!("analytic max|RS|={analytic:.2e} simulated |RS|={simulated:.4}"),
    ));

    let mut metadata = Metadata::new("verify", n, seed, &normals, "various");
    metadata.runtime_seconds = Some(start.elapsed().as_secs_f64());
    Ok(VerifyReport { metadata, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = uniform_grid(11);
        assert_eq!(g.len(), 11);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[10], 1.0);
        assert!((g[3] - 0.3).abs() < 1e-15);
        assert_eq!(uniform_grid(1), vec![0.0]);
    }

    #[test]
    fn config_validation() {
        let mut cfg = ExperimentConfig::new([Marginal::StandardNormal; 3]);
        assert!(cfg.validate().is_ok());
        cfg.lambda_grid = vec![0.5, 0.2];
        assert!(cfg.validate().is_err());
        cfg.lambda_grid = vec![0.0, 1.5];
        assert!(cfg.validate().is_err());
        cfg.lambda_grid = Vec::new();
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn linear_fit_exact_line() {
        let (s, i) = linear_fit(&[0.0, 1.0, 2.0], &[1.0, 3.0, 5.0]).unwrap();
        assert!((s - 2.0).abs() < 1e-15 && (i - 1.0).abs() < 1e-15);
        assert!(linear_fit(&[1.0, 1.0], &[0.0, 1.0]).is_none());
    }

    #[test]
    fn trend_statistic_extremes() {
        let up: Vec<f64> = (0..11).map(|i| (i * i) as f64).collect();
        let down: Vec<f64> = up.iter().rev().copied().collect();
        assert!((trend_statistic(&up).unwrap() - 1.0).abs() < 1e-12);
        assert!((trend_statistic(&down).unwrap() + 1.0).abs() < 1e-12);
        // one swapped neighbour pair: 1 - 6·2/(n(n² - 1))
        let r = trend_statistic(&[0.0, 2.0, 1.0, 3.0, 4.0]).unwrap();
        assert!((r - 0.9).abs() < 1e-12);
    }

    #[test]
    fn single_factor_oracle_values() {
        let (rs, rho) = single_factor_exact(|u| [u, u, u]);
        assert!(rs.abs() < 1e-14);
        assert!(rho.iter().all(|r| (r - 1.0).abs() < 1e-13));
        let (rs, rho) = single_factor_exact(mixing_sum_row);
        assert!(rs.abs() < 1e-14);
        assert!(rho.iter().all(|r| (r + 0.5).abs() < 1e-13), "{rho:?}");
    }

    #[test]
    fn figure1_rejects_exponential() {
        let cfg = ExperimentConfig::new([Marginal::exponential(1.0).unwrap(); 3]);
        assert!(matches!(run_figure1(&cfg), Err(Error::UnsupportedMarginal(_))));
    }
}
