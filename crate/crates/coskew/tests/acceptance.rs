//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use std::process::{Command, ExitCode};
use std::time::Instant;

use coskew::experiments::{
    analytic_rank_coskew_max, run_example1, run_figure1, run_figure2, trend_statistic, uniform_grid, ExperimentConfig,
    ExperimentReport, DEFAULT_SEED, GAUSSIAN_TRIPLES,
};
use coskew::report::{real, to_csv_bytes};
use coskew_core::copulas::{sample_gaussian, sample_max_coskew, sample_mixture};
use coskew_core::{
    build_event_mask, conditional_corr, coskew_bound, coskewness, pearson_corr, rank_coskewness, rank_transform,
    spearman_rho, to_data, EventSpec, GaussianParams, Marginal, RankMode, SeedSpec,
};

const N: usize = 100_000;
const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

fn seed() -> SeedSpec {
    SeedSpec::new(DEFAULT_SEED, 0)
}

struct Outcome {
    id: u8,
    passed: bool,
    detail: String,
}

/// Criteria 2–9 also return the CSV bytes of their numeric output.
struct Evaluated {
    outcomes: Vec<Outcome>,
    csv: Vec<Vec<u8>>,
}

fn values_csv(rows: &[Vec<f64>]) -> Vec<u8> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    for r in rows {
        w.write_record(r.iter().map(|&v| real(v))).unwrap();
    }
    w.into_inner().unwrap()
}

fn max_abs(it: impl IntoIterator<Item = f64>) -> f64 {
    it.into_iter().fold(0.0, |m, v| if v.abs() > m || v.is_nan() { v.abs() } else { m })
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let normal = coskew_bound(&[Marginal::StandardNormal; 3]).unwrap().s_max;
    let uniform = coskew_bound(&[Marginal::Uniform01; 3]).unwrap().s_max;
    let secs = start.elapsed().as_secs_f64();
    let en = (normal - 2.0 * (2.0 * std::f64::consts::PI).sqrt() / std::f64::consts::PI).abs();
    let eu = (uniform - 3.0 * 3f64.sqrt() / 4.0).abs();
    Outcome {
        id: 1,
        passed: en < 1e-6 && eu < 1e-6 && secs < 1.0,
        detail: format!("normal s_max={normal:.10} (err {en:.1e}), uniform s_max={uniform:.10} (err {eu:.1e}), {secs:.3}s (limit 1s)"),
    }
}

fn figure1(marginals: [Marginal; 3]) -> ExperimentReport {
    let mut cfg = ExperimentConfig::new(marginals);
    cfg.n = N;
    cfg.seed = seed();
    cfg.lambda_grid = uniform_grid(11);
    let mut rep = run_figure1(&cfg).unwrap();
    rep.metadata.runtime_seconds = None;
    rep
}

fn criteria_2_3(ev: &mut Evaluated) {
    let start = Instant::now();
    let normal = figure1([Marginal::StandardNormal; 3]);
    let secs = start.elapsed().as_secs_f64();
    let dev = max_abs(normal.rows.iter().map(|r| r.coskewness_hat - r.coskewness_predicted.unwrap()));
    let s0 = normal.rows.first().unwrap().coskewness_hat;
    let s1 = normal.rows.last().unwrap().coskewness_hat;
    let ends = (s0 + 1.59).abs().max((s1 - 1.59).abs());
    ev.outcomes.push(Outcome {
        id: 2,
        passed: dev < 0.05 && ends < 0.05 && secs < 10.0,
        detail: format!(
            "max|S-pred|={dev:.4} (tol 0.05), S(0)={s0:.4} S(1)={s1:.4} vs -/+1.59 (tol 0.05), {secs:.2}s (limit 10s)"
        ),
    });
    ev.csv.push(to_csv_bytes(&normal).unwrap());

    let laplace = figure1([Marginal::Laplace; 3]);
    let t5 = figure1([Marginal::student_t(5.0).unwrap(); 3]);
    let mut parts = Vec::new();
    let mut ok = true;
    for (name, rep) in [("normal", &normal), ("laplace", &laplace), ("t:5", &t5)] {
        let rhos: Vec<f64> = rep.rows.iter().flat_map(|r| r.rho_hat()).collect();
        let m = max_abs(rhos.iter().copied());
        ok &= rhos.len() == 33 && m < 0.02;
        parts.push(format!("{name} max|rho|={m:.4} over {}", rhos.len()));
    }
    ev.outcomes.push(Outcome { id: 3, passed: ok, detail: format!("{} (tol 0.02)", parts.join(", ")) });
    ev.csv.push(to_csv_bytes(&laplace).unwrap());
    ev.csv.push(to_csv_bytes(&t5).unwrap());
}

fn criterion_4(ev: &mut Evaluated) {
    let mut rows = Vec::new();
    let mut ok = true;
    let mut parts = Vec::new();
    for &(a, b, c) in &GAUSSIAN_TRIPLES {
        let us = sample_gaussian(N, &GaussianParams::new(a, b, c).unwrap(), seed()).unwrap();
        let x = to_data(&us, &[Marginal::StandardNormal; 3]).unwrap();
        let s = coskewness(x.column(0), x.column(1), x.column(2)).unwrap();
        let rho = PAIRS.map(|(i, j)| pearson_corr(x.column(i), x.column(j)).unwrap());
        let err = max_abs(rho.iter().zip([a, b, c]).map(|(r, t)| r - t));
        ok &= s.abs() < 0.05 && err < 0.02;
        parts.push(format!("({a},{b},{c}): |S|={:.4} max|rho-target|={err:.4}", s.abs()));
        rows.push(vec![a, b, c, s, rho[0], rho[1], rho[2]]);
    }
    ev.outcomes.push(Outcome { id: 4, passed: ok, detail: format!("{} (tol 0.05 / 0.02)", parts.join("; ")) });
    ev.csv.push(values_csv(&rows));
}

fn exponential_ranks(us: &coskew_core::USample) -> [Vec<f64>; 3] {
    let e = Marginal::exponential(1.0).unwrap();
    let x = to_data(us, &[e; 3]).unwrap();
    [0, 1, 2].map(|j| rank_transform(x.column(j), RankMode::TrueCdf(e)))
}

fn criterion_5(ev: &mut Evaluated) {
    let mut rows = Vec::new();
    let mut rho_max = 0.0f64;
    let mut rs_err = 0.0f64;
    for l in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let r = exponential_ranks(&sample_mixture(N, l, seed()).unwrap());
        let rho = PAIRS.map(|(i, j)| spearman_rho(&r[i], &r[j]).unwrap());
        let rs = rank_coskewness(&r[0], &r[1], &r[2]).unwrap();
        rho_max = rho_max.max(max_abs(rho));
        rs_err = rs_err.max((rs - (2.0 * l - 1.0)).abs());
        rows.push(vec![l, rs, rho[0], rho[1], rho[2]]);
    }
    ev.outcomes.push(Outcome {
        id: 5,
        passed: rho_max < 0.02 && rs_err < 0.03,
        detail: format!("max|rhoS|={rho_max:.4} (tol 0.02), max|RS-(2l-1)|={rs_err:.4} (tol 0.03) over 5 lambdas"),
    });
    ev.csv.push(values_csv(&rows));
}

fn criterion_6(ev: &mut Evaluated) {
    let analytic = analytic_rank_coskew_max(1000, seed());
    let mut rows = vec![vec![analytic]];
    let mut sim = 0.0f64;
    for &(a, b, c) in &GAUSSIAN_TRIPLES {
        let r = exponential_ranks(&sample_gaussian(N, &GaussianParams::new(a, b, c).unwrap(), seed()).unwrap());
        let rs = rank_coskewness(&r[0], &r[1], &r[2]).unwrap();
        sim = sim.max(rs.abs());
        rows.push(vec![a, b, c, rs]);
    }
    ev.outcomes.push(Outcome {
        id: 6,
        passed: analytic < 1e-12 && sim < 0.02,
        detail: format!(
            "analytic max|RS| over 1000 triples={analytic:.2e} (tol 1e-12), simulated max|RS|={sim:.4} (tol 0.02)"
        ),
    });
    ev.csv.push(values_csv(&rows));
}

fn criterion_7(ev: &mut Evaluated) {
    let mut rep = run_example1(N, seed()).unwrap();
    rep.metadata.runtime_seconds = None;
    let mut ok = true;
    let mut parts = Vec::new();
    for r in &rep.rows {
        let rs_ok = r.rs_hat.abs() < 0.01 && r.rs_exact.abs() < 1e-12;
        let rho_err = max_abs(r.rho_s_hat.iter().zip(&r.rho_s_exact).map(|(h, e)| h - e));
        ok &= rs_ok && rho_err < 0.02;
        let mut s = format!("{}: RS={:.4} rhoS={:.3?} exact={:.3?}", r.copula, r.rs_hat, r.rho_s_hat, r.rho_s_exact);
        if r.discrepancy {
            s.push_str(&format!(" [discrepancy vs reported {:?}]", r.rho_s_reported.unwrap()));
        }
        parts.push(s);
    }
    let mixing = rep.rows.iter().find(|r| r.copula == "mixingsum").unwrap();
    ok &= mixing.discrepancy && mixing.rho_s_exact.iter().all(|r| (r + 0.5).abs() < 1e-12);
    ev.outcomes.push(Outcome { id: 7, passed: ok, detail: format!("{} (tol RS 0.01, rhoS 0.02)", parts.join("; ")) });
    ev.csv.push(to_csv_bytes(&rep).unwrap());
}

fn criterion_8(ev: &mut Evaluated) {
    let start = Instant::now();
    let mut cfg = ExperimentConfig::new([Marginal::StandardNormal; 3]);
    cfg.n = N;
    cfg.seed = seed();
    cfg.event = EventSpec::DownsideSum;
    let mut rep = run_figure2(&cfg).unwrap();
    rep.metadata.runtime_seconds = None;
    let secs = start.elapsed().as_secs_f64();
    let mut ok = secs < 20.0 && rep.rows.len() == 11;
    let mut parts = Vec::new();
    for (k, name) in ["12", "13", "23"].iter().enumerate() {
        let series: Vec<f64> = rep
            .rows
            .iter()
            .map(|r| {
                let c = r.conditional.unwrap();
                [c.rho12, c.rho13, c.rho23][k]
            })
            .collect();
        let trend = trend_statistic(&series).unwrap();
        let first = (series[1] - series[0]).abs();
        let last = (series[10] - series[9]).abs();
        ok &= trend <= -0.9 && first > last;
        parts.push(format!("rho{name}: trend={trend:.3} first|d|={first:.4} last|d|={last:.4}"));
    }
    let sanity = max_abs(rep.rows.iter().map(|r| r.conditional.unwrap().rho12_all_rows - r.rho12_hat));
    ok &= sanity == 0.0;
    ev.outcomes.push(Outcome {
        id: 8,
        passed: ok,
        detail: format!(
            "{} (trend <= -0.9), all-rows column matches rho12_hat, {secs:.2}s (limit 20s)",
            parts.join("; ")
        ),
    });
    ev.csv.push(to_csv_bytes(&rep).unwrap());
}

fn criterion_9(ev: &mut Evaluated) {
    let ms = [Marginal::StandardNormal; 3];
    let x = to_data(&sample_max_coskew(N, seed()).unwrap(), &ms).unwrap();
    let mask = build_event_mask(&x, EventSpec::ExceedanceUpper(0.5), (0, 1), Some(&ms)).unwrap();
    let rho = conditional_corr(x.column(0), x.column(1), &mask).unwrap();
    let rows = mask.iter().filter(|&&b| b).count();
    ev.outcomes.push(Outcome {
        id: 9,
        passed: (rho - 1.0).abs() < 1e-9,
        detail: format!("rho12|x1>0,x2>0 = {rho:.15} on {rows} rows (tol 1e-9)"),
    });
    ev.csv.push(values_csv(&[vec![rho, rows as f64]]));
}

fn evaluate() -> Evaluated {
    let mut ev = Evaluated { outcomes: vec![criterion_1()], csv: Vec::new() };
    criteria_2_3(&mut ev);
    criterion_4(&mut ev);
    criterion_5(&mut ev);
    criterion_6(&mut ev);
    criterion_7(&mut ev);
    criterion_8(&mut ev);
    criterion_9(&mut ev);
    ev
}

fn cli_figure1_csv() -> Vec<u8> {
    let out = Command::new(env!("CARGO_BIN_EXE_coskew"))
        .args(["figure1", "--n", "20000", "--seed", "42", "--format", "csv"])
        .output()
        .expect("run coskew");
    assert!(out.status.success());
    out.stdout
}

fn main() -> ExitCode {
    let first = evaluate();
    let second = evaluate();
    let same_lib = first.csv.len() == second.csv.len() && first.csv.iter().zip(&second.csv).all(|(a, b)| a == b);
    let same_cli = cli_figure1_csv() == cli_figure1_csv();
    let bytes: usize = first.csv.iter().map(Vec::len).sum();
    let mut outcomes = first.outcomes;
    outcomes.push(Outcome {
        id: 10,
        passed: same_lib && same_cli,
        detail: format!(
            "criteria 2-9 rerun: {} CSV tables ({bytes} bytes) identical={same_lib}; CLI figure1 rerun identical={same_cli}",
            first.csv.len()
        ),
    });
    outcomes.sort_by_key(|o| o.id);
    let mut failed = 0;
    for o in &outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("acceptance criterion {:>2}: {status} | {}", o.id, o.detail);
        failed += usize::from(!o.passed);
    }
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
