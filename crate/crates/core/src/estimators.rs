//! Sample statistics on columns.
//!
//! Moment statistics are population-normalised (divide by `n`). Rank
//! statistics centre on the constant 1/2, never on the sample mean of ranks.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::marginals::Marginal;
use crate::moments::{check_columns, CoMoments};
use crate::sample::TriSample;
use crate::sum::NeumaierSum;

/// Smallest event accepted by [`conditional_corr`].
pub const MIN_EVENT_ROWS: usize = 30;

fn require_rows(n: usize, required: usize) -> Result<()> {
    if n < required {
        return Err(Error::TooFewRows { required, got: n });
    }
    Ok(())
}

/// Pearson correlation of two columns.
pub fn pearson_corr(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = check_columns(&[x, y])?;
    require_rows(n, 2)?;
    CoMoments::from_columns(&[x, y], false)?.correlation(0, 1)
}

/// Coskewness `E[(x - x̄)(y - ȳ)(z - z̄)] / (s_x s_y s_z)`.
pub fn coskewness(x: &[f64], y: &[f64], z: &[f64]) -> Result<f64> {
    let n = check_columns(&[x, y, z])?;
    require_rows(n, 2)?;
    CoMoments::from_columns(&[x, y, z], true)?.coskewness(0, 1, 2)
}

/// All standardized third mixed moments of a `d`-column sample, laid out as
/// a `d × d²` matrix with `s_ijk` at row `i`, column `j*d + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoskewMatrix {
    d: usize,
    entries: Vec<f64>,
}

impl CoskewMatrix {
    pub fn d(&self) -> usize {
        self.d
    }

    /// `s_ijk` (zero-based indices).
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.entries[(i * self.d + j) * self.d + k]
    }

    /// Entry at `row`, `col` of the `d × d²` layout.
    pub fn at(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.d * self.d + col]
    }

    /// Row-major `d × d²` entries.
    pub fn as_slice(&self) -> &[f64] {
        &self.entries
    }
}

pub fn coskew_matrix(sample: &TriSample) -> Result<CoskewMatrix> {
    let d = sample.d();
    if d < 2 {
        return Err(Error::Dimension { required: ">= 2", got: d });
    }
    require_rows(sample.n(), 2)?;
    let cols: Vec<&[f64]> = sample.columns().iter().map(Vec::as_slice).collect();
    let acc = CoMoments::from_columns(&cols, true)?;
    let mut entries = Vec::with_capacity(d * d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                entries.push(acc.coskewness(i, j, k)?);
            }
        }
    }
    Ok(CoskewMatrix { d, entries })
}

/// How observations are mapped to (0, 1) before rank statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RankMode {
    /// Apply the known generating CDF.
    TrueCdf(Marginal),
    /// `(rank - 1/2) / n` with midranks for ties.
    Empirical,
}

pub fn rank_transform(x: &[f64], mode: RankMode) -> Vec<f64> {
    match mode {
        RankMode::TrueCdf(m) => x.iter().map(|&v| m.cdf(v)).collect(),
        RankMode::Empirical => empirical_ranks(x),
    }
}

fn empirical_ranks(x: &[f64]) -> Vec<f64> {
    let n = x.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
    let mut out = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && x[order[end]] == x[order[start]] {
            end += 1;
        }
        // Positions start..end hold ranks start+1..=end; their midrank minus 1/2
        // is (start + end) / 2.
        let r = (start + end) as f64 / 2.0 / n as f64;
        for &i in &order[start..end] {
            out[i] = r;
        }
        start = end;
    }
    out
}

/// `12 · mean((u - 1/2)(v - 1/2))` on rank-transformed columns.
pub fn spearman_rho(u: &[f64], v: &[f64]) -> Result<f64> {
    let n = check_columns(&[u, v])?;
    require_rows(n, 1)?;
    let s: NeumaierSum = u.iter().zip(v).map(|(&a, &b)| (a - 0.5) * (b - 0.5)).collect();
    Ok(12.0 * s.value() / n as f64)
}

/// `32 · mean((u - 1/2)(v - 1/2)(w - 1/2))` on rank-transformed columns.
pub fn rank_coskewness(u: &[f64], v: &[f64], w: &[f64]) -> Result<f64> {
    let n = check_columns(&[u, v, w])?;
    require_rows(n, 1)?;
    let s: NeumaierSum = u.iter().zip(v).zip(w).map(|((&a, &b), &c)| ((a - 0.5) * (b - 0.5)) * (c - 0.5)).collect();
    Ok(32.0 * s.value() / n as f64)
}

/// Pearson correlation over the rows selected by `mask`, with conditional
/// means and standard deviations.
pub fn conditional_corr(x: &[f64], y: &[f64], mask: &[bool]) -> Result<f64> {
    let n = check_columns(&[x, y])?;
    if mask.len() != n {
        return Err(Error::LengthMismatch(n, mask.len()));
    }
    let selected = mask.iter().filter(|&&m| m).count();
    if selected < MIN_EVENT_ROWS {
        return Err(Error::InsufficientEventRows { selected, required: MIN_EVENT_ROWS });
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) =
        x.iter().zip(y).zip(mask).filter(|(_, &m)| m).map(|((&a, &b), _)| (a, b)).unzip();
    CoMoments::from_columns(&[&xs, &ys], false)?.correlation(0, 1).map_err(|_| Error::DegenerateConditionalColumn)
}

/// Conditioning event for [`conditional_corr`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EventSpec {
    /// `x1 + x2 + x3` below its sample mean.
    DownsideSum,
    /// Both members of the pair strictly above their `p`-quantile.
    ExceedanceUpper(f64),
    /// Both members of the pair at or below their `p`-quantile.
    ExceedanceLower(f64),
}

impl EventSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::DownsideSum => Ok(()),
            Self::ExceedanceUpper(p) | Self::ExceedanceLower(p) => {
                if p > 0.0 && p < 1.0 {
                    Ok(())
                } else {
                    Err(Error::ProbabilityOutOfRange(p))
                }
            }
        }
    }
}

impl core::fmt::Display for EventSpec {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::DownsideSum => f.write_str("downside"),
            Self::ExceedanceUpper(p) => write!(f, "exceed-upper:{p}"),
            Self::ExceedanceLower(p) => write!(f, "exceed-lower:{p}"),
        }
    }
}

impl core::str::FromStr for EventSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let token = s.trim();
        let bad = || Error::Parse { what: "event", token: alloc::string::ToString::to_string(token) };
        let spec = match token.split_once(':') {
            None if token == "downside" => Self::DownsideSum,
            Some((kind, p)) => {
                let p: f64 = p.trim().parse().map_err(|_| bad())?;
                match kind {
                    "exceed-upper" => Self::ExceedanceUpper(p),
                    "exceed-lower" => Self::ExceedanceLower(p),
                    _ => return Err(bad()),
                }
            }
            None => return Err(bad()),
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Type-7 sample quantile (linear interpolation between order statistics).
fn empirical_quantile(x: &[f64], p: f64) -> f64 {
    let mut sorted = x.to_vec();
    sorted.sort_by(f64::total_cmp);
    let h = (sorted.len() - 1) as f64 * p;
    let lo = libm::floor(h) as usize;
    let hi = (lo + 1).min(sorted.len() - 1);
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

/// Row mask for `spec`. `pair` names the two columns an exceedance event
/// thresholds; with `marginals` the thresholds are the true quantiles,
/// otherwise sample quantiles.
pub fn build_event_mask(
    sample: &TriSample,
    spec: EventSpec,
    pair: (usize, usize),
    marginals: Option<&[Marginal]>,
) -> Result<Vec<bool>> {
    spec.validate()?;
    let n = sample.n();
    require_rows(n, 1)?;
    match spec {
        EventSpec::DownsideSum => {
            if sample.d() != 3 {
                return Err(Error::Dimension { required: "3", got: sample.d() });
            }
            let sums: Vec<f64> =
                (0..n).map(|r| sample.column(0)[r] + sample.column(1)[r] + sample.column(2)[r]).collect();
            let mean = sums.iter().copied().collect::<NeumaierSum>().value() / n as f64;
            Ok(sums.into_iter().map(|s| s < mean).collect())
        }
        EventSpec::ExceedanceUpper(p) | EventSpec::ExceedanceLower(p) => {
            let (i, j) = pair;
            let d = sample.d();
            if i >= d || j >= d {
                return Err(Error::Dimension { required: "pair index < d", got: i.max(j) });
            }
            let threshold = |c: usize| -> Result<f64> {
                match marginals {
                    Some(ms) => ms
                        .get(c)
                        .ok_or(Error::Dimension { required: "one marginal per column", got: ms.len() })?
                        .quantile(p),
                    None => Ok(empirical_quantile(sample.column(c), p)),
                }
            };
            let (ti, tj) = (threshold(i)?, threshold(j)?);
            let (xi, xj) = (sample.column(i), sample.column(j));
            let upper = matches!(spec, EventSpec::ExceedanceUpper(_));
            Ok((0..n).map(|r| if upper { xi[r] > ti && xj[r] > tj } else { xi[r] <= ti && xj[r] <= tj }).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn pearson_examples() {
        let x = [1.0, 2.0, 3.0, 5.0];
        let neg: Vec<f64> = x.iter().map(|v| -v).collect();
        assert!((pearson_corr(&x, &x).unwrap() - 1.0).abs() < 1e-15);
        assert!((pearson_corr(&x, &neg).unwrap() + 1.0).abs() < 1e-15);
        // cov = 1/3, var = 2/3 each
        assert!((pearson_corr(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn pearson_errors() {
        assert_eq!(pearson_corr(&[1.0, 1.0], &[1.0, 2.0]), Err(Error::DegenerateColumn));
        assert_eq!(pearson_corr(&[1.0], &[1.0]), Err(Error::TooFewRows { required: 2, got: 1 }));
        assert_eq!(pearson_corr(&[1.0, 2.0], &[1.0]), Err(Error::LengthMismatch(2, 1)));
    }

    #[test]
    fn coskewness_sign_product_is_one() {
        let x = [1.0, -1.0, 1.0, -1.0];
        let y = [1.0, 1.0, -1.0, -1.0];
        let z: Vec<f64> = x.iter().zip(&y).map(|(a, b)| a * b).collect();
        assert!((coskewness(&x, &y, &z).unwrap() - 1.0).abs() < 1e-15);
        assert!(pearson_corr(&x, &y).unwrap().abs() < 1e-15);
    }

    #[test]
    fn coskewness_degenerate() {
        assert_eq!(coskewness(&[1.0, 2.0], &[3.0, 3.0], &[1.0, 0.0]), Err(Error::DegenerateColumn));
    }

    #[test]
    fn empirical_ranks_examples() {
        assert_eq!(rank_transform(&[10.0, 20.0, 30.0], RankMode::Empirical), vec![1.0 / 6.0, 3.0 / 6.0, 5.0 / 6.0]);
        assert_eq!(rank_transform(&[30.0, 10.0, 20.0], RankMode::Empirical)[0], 5.0 / 6.0);
        // ties share the midrank: ranks 2 and 3 -> 2.5 -> (2.5 - .5)/4
        assert_eq!(rank_transform(&[1.0, 2.0, 2.0, 3.0], RankMode::Empirical), vec![0.125, 0.5, 0.5, 0.875]);
    }

    #[test]
    fn true_cdf_ranks() {
        let x = [0.1, 0.5, 0.9];
        assert_eq!(rank_transform(&x, RankMode::TrueCdf(Marginal::Uniform01)), x.to_vec());
        assert_eq!(rank_transform(&[0.0], RankMode::TrueCdf(Marginal::StandardNormal)), vec![0.5]);
    }

    #[test]
    fn conditional_corr_full_mask_is_pearson() {
        let x: Vec<f64> = (0..100).map(|i| libm::sin(i as f64)).collect();
        let y: Vec<f64> = (0..100).map(|i| libm::cos(0.3 * i as f64) + x[i]).collect();
        let all = vec![true; 100];
        assert_eq!(conditional_corr(&x, &y, &all), pearson_corr(&x, &y));
    }

    #[test]
    fn conditional_corr_errors() {
        let x: Vec<f64> = (0..100).map(f64::from).collect();
        let mut mask = vec![false; 100];
        mask[..29].iter_mut().for_each(|m| *m = true);
        assert_eq!(conditional_corr(&x, &x, &mask), Err(Error::InsufficientEventRows { selected: 29, required: 30 }));
        let flat = vec![1.0; 100];
        assert_eq!(conditional_corr(&x, &flat, &[true; 100]), Err(Error::DegenerateConditionalColumn));
    }

    #[test]
    fn event_tokens() {
        assert_eq!("downside".parse::<EventSpec>().unwrap(), EventSpec::DownsideSum);
        assert_eq!("exceed-upper:0.9".parse::<EventSpec>().unwrap(), EventSpec::ExceedanceUpper(0.9));
        assert_eq!("exceed-lower:0.1".parse::<EventSpec>().unwrap(), EventSpec::ExceedanceLower(0.1));
        assert!("exceed-upper:1".parse::<EventSpec>().is_err());
        assert!("upside".parse::<EventSpec>().is_err());
    }

    #[test]
    fn downside_mask_is_below_mean_sum() {
        let s =
            TriSample::new(vec![vec![1.0, 2.0, 3.0, 4.0], vec![0.0, 0.0, 0.0, 0.0], vec![0.0, 0.0, 0.0, 1.0]]).unwrap();
        let m = build_event_mask(&s, EventSpec::DownsideSum, (0, 1), None).unwrap();
        assert_eq!(m, vec![true, true, false, false]);
    }

    #[test]
    fn exceedance_mask_thresholds() {
        let s = TriSample::new(vec![vec![-1.0, 0.5, 1.0, 2.0], vec![1.0, 0.5, -1.0, 2.0], vec![0.0; 4]]).unwrap();
        let ms = [Marginal::StandardNormal; 3];
        let up = build_event_mask(&s, EventSpec::ExceedanceUpper(0.5), (0, 1), Some(&ms)).unwrap();
        assert_eq!(up, vec![false, true, false, true]);
        let lo = build_event_mask(&s, EventSpec::ExceedanceLower(0.5), (0, 1), Some(&ms)).unwrap();
        assert_eq!(lo, vec![false, false, false, false]);
        // empirical median of column 0 is 0.75
        let emp = build_event_mask(&s, EventSpec::ExceedanceUpper(0.5), (0, 1), None).unwrap();
        assert_eq!(emp, vec![false, false, false, true]);
    }

    #[test]
    fn downside_requires_three_columns() {
        let s = TriSample::new(vec![vec![1.0, 2.0], vec![1.0, 2.0]]).unwrap();
        assert!(build_event_mask(&s, EventSpec::DownsideSum, (0, 1), None).is_err());
    }
}
