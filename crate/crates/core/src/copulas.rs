//! Seeded samplers for trivariate copulas.
//!
//! The extremal structures pair a driving uniform `U` with sign flips chosen
//! by the quadrant indicators `I = 1{U > 1/2}` and `J = 1{V > 1/2}`:
//!
//! | (I, J) | u2    | u3 (max) | u3 (min) |
//! |--------|-------|----------|----------|
//! | (1, 1) | u     | u        | 1 - u    |
//! | (1, 0) | 1 - u | 1 - u    | u        |
//! | (0, 1) | u     | 1 - u    | u        |
//! | (0, 0) | 1 - u | u        | 1 - u    |
//!
//! The mixture keeps `(u1, u2)` and picks the max-branch `u3` when an
//! independent Bernoulli(lambda) draw is one.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use libm::sqrt;

use crate::error::{Error, Result};
use crate::marginals::Marginal;
use crate::rng::{SeedSpec, Substream, UniformStream};
use crate::sample::{TriSample, USample};
use crate::special::{normal_cdf, normal_quantile};

/// Correlation triple of a trivariate Gaussian copula together with the
/// coefficients of its triangular construction from independent normals:
///
/// ```text
/// H1 = Z1
/// H2 = rho12 Z1 + a Z2
/// H3 = rho13 Z1 + (rho23 - rho12 rho13) / a Z2 + b / a Z3
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianParams {
    rho12: f64,
    rho13: f64,
    rho23: f64,
    a: f64,
    b: f64,
}

/// `1 - r12^2 - r13^2 - r23^2 + 2 r12 r13 r23`, the determinant of the
/// correlation matrix.
pub fn correlation_determinant(r12: f64, r13: f64, r23: f64) -> f64 {
    1.0 - r12 * r12 - r13 * r13 - r23 * r23 + 2.0 * r12 * r13 * r23
}

/// Checks that `(r12, r13, r23)` is a valid correlation triple.
pub fn check_correlation_triple(r12: f64, r13: f64, r23: f64) -> Result<()> {
    let in_range = |r: f64| (-1.0..=1.0).contains(&r);
    if !(in_range(r12) && in_range(r13) && in_range(r23)) || !(correlation_determinant(r12, r13, r23) >= 0.0) {
        return Err(Error::InvalidCorrelation { rho12: r12, rho13: r13, rho23: r23 });
    }
    Ok(())
}

impl GaussianParams {
    pub fn new(rho12: f64, rho13: f64, rho23: f64) -> Result<Self> {
        let open = |r: f64| r > -1.0 && r < 1.0;
        if !(open(rho12) && open(rho13) && open(rho23)) {
            return Err(Error::InvalidCorrelation { rho12, rho13, rho23 });
        }
        let b2 = correlation_determinant(rho12, rho13, rho23);
        if !(b2 >= 0.0) {
            return Err(Error::InvalidCorrelation { rho12, rho13, rho23 });
        }
        Ok(Self { rho12, rho13, rho23, a: sqrt(1.0 - rho12 * rho12), b: sqrt(b2) })
    }

    pub fn rho12(&self) -> f64 {
        self.rho12
    }
    pub fn rho13(&self) -> f64 {
        self.rho13
    }
    pub fn rho23(&self) -> f64 {
        self.rho23
    }
    pub fn a(&self) -> f64 {
        self.a
    }
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Maps independent standard normals to the correlated triple `H`.
    pub fn correlate(&self, z: [f64; 3]) -> [f64; 3] {
        let h2 = self.rho12 * z[0] + self.a * z[1];
        let h3 = self.rho13 * z[0] + (self.rho23 - self.rho12 * self.rho13) / self.a * z[1] + self.b / self.a * z[2];
        [z[0], h2, h3]
    }
}

/// One of the supported dependence structures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CopulaSpec {
    Comonotonic,
    Independence,
    MaxCoskew,
    MinCoskew,
    Mixture { lambda: f64 },
    MixingSum,
    Gaussian(GaussianParams),
}

impl CopulaSpec {
    pub fn mixture(lambda: f64) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(Self::Mixture { lambda })
    }

    pub fn gaussian(rho12: f64, rho13: f64, rho23: f64) -> Result<Self> {
        GaussianParams::new(rho12, rho13, rho23).map(Self::Gaussian)
    }

    /// Draws `n` rows.
    pub fn sample(&self, n: usize, seed: SeedSpec) -> Result<USample> {
        match *self {
            Self::Comonotonic => sample_comonotonic(n, seed),
            Self::Independence => sample_independence(n, seed),
            Self::MaxCoskew => sample_max_coskew(n, seed),
            Self::MinCoskew => sample_min_coskew(n, seed),
            Self::Mixture { lambda } => sample_mixture(n, lambda, seed),
            Self::MixingSum => sample_mixing_sum(n, seed),
            Self::Gaussian(p) => sample_gaussian(n, &p, seed),
        }
    }
}

impl fmt::Display for CopulaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Comonotonic => f.write_str("comonotonic"),
            Self::Independence => f.write_str("independence"),
            Self::MaxCoskew => f.write_str("max"),
            Self::MinCoskew => f.write_str("min"),
            Self::Mixture { lambda } => write!(f, "mixture:{lambda}"),
            Self::MixingSum => f.write_str("mixingsum"),
            Self::Gaussian(p) => write!(f, "gaussian:{},{},{}", p.rho12, p.rho13, p.rho23),
        }
    }
}

impl FromStr for CopulaSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let token = s.trim();
        let bad = || Error::Parse { what: "copula", token: token.to_string() };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        match token.split_once(':') {
            None => match token {
                "comonotonic" => Ok(Self::Comonotonic),
                "independence" => Ok(Self::Independence),
                "max" => Ok(Self::MaxCoskew),
                "min" => Ok(Self::MinCoskew),
                "mixingsum" => Ok(Self::MixingSum),
                _ => Err(bad()),
            },
            Some(("mixture", arg)) => Self::mixture(num(arg)?),
            Some(("gaussian", args)) => {
                let rhos = args.split(',').map(num).collect::<Result<Vec<_>>>()?;
                match rhos[..] {
                    [r12, r13, r23] => Self::gaussian(r12, r13, r23),
                    _ => Err(bad()),
                }
            }
            Some(_) => Err(bad()),
        }
    }
}

fn check_lambda(lambda: f64) -> Result<()> {
    if (0.0..=1.0).contains(&lambda) {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name: "lambda", value: lambda })
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::TooFewRows { required: 1, got: 0 });
    }
    Ok(())
}

fn draws(n: usize, seed: SeedSpec, sub: Substream) -> Vec<f64> {
    let mut out = vec![0.0; n];
    UniformStream::new(seed, sub).fill(&mut out);
    out
}

/// Second coordinate shared by the extremal copulas: `u` when `J = 1`.
#[inline]
fn extremal_u2(u: f64, v: f64) -> f64 {
    if v > 0.5 {
        u
    } else {
        1.0 - u
    }
}

/// Third coordinate of the max-coskewness copula: `u` when `I = J`.
#[inline]
fn max_u3(u: f64, v: f64) -> f64 {
    if (u > 0.5) == (v > 0.5) {
        u
    } else {
        1.0 - u
    }
}

/// Third coordinate of the min-coskewness copula: `1 - u` when `I = J`.
#[inline]
fn min_u3(u: f64, v: f64) -> f64 {
    if (u > 0.5) == (v > 0.5) {
        1.0 - u
    } else {
        u
    }
}

/// Row of the max-coskewness copula driven by `(u, v)`.
pub fn max_coskew_row(u: f64, v: f64) -> [f64; 3] {
    [u, extremal_u2(u, v), max_u3(u, v)]
}

/// Row of the min-coskewness copula driven by `(u, v)`.
pub fn min_coskew_row(u: f64, v: f64) -> [f64; 3] {
    [u, extremal_u2(u, v), min_u3(u, v)]
}

/// Row of the mixture copula; `b` selects the max branch for the third
/// coordinate.
pub fn mixture_row(u: f64, v: f64, b: bool) -> [f64; 3] {
    let u3 = if b { max_u3(u, v) } else { min_u3(u, v) };
    [u, extremal_u2(u, v), u3]
}

/// Row of the mixing copula with `u1 + u2 + u3 = 3/2`.
pub fn mixing_sum_row(u: f64) -> [f64; 3] {
    if u <= 0.5 {
        [u, 1.0 - 2.0 * u, u + 0.5]
    } else {
        [u, 2.0 - 2.0 * u, u - 0.5]
    }
}

fn build(n: usize, seed: SeedSpec, spec: CopulaSpec, rows: impl Iterator<Item = [f64; 3]>) -> USample {
    let mut columns = [Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n)];
    for r in rows {
        for (col, x) in columns.iter_mut().zip(r) {
            col.push(x);
        }
    }
    USample { columns, seed, spec }
}

pub fn sample_max_coskew(n: usize, seed: SeedSpec) -> Result<USample> {
    check_n(n)?;
    let u = draws(n, seed, Substream::U);
    let v = draws(n, seed, Substream::V);
    let rows = u.iter().zip(&v).map(|(&u, &v)| max_coskew_row(u, v));
    Ok(build(n, seed, CopulaSpec::MaxCoskew, rows))
}

pub fn sample_min_coskew(n: usize, seed: SeedSpec) -> Result<USample> {
    check_n(n)?;
    let u = draws(n, seed, Substream::U);
    let v = draws(n, seed, Substream::V);
    let rows = u.iter().zip(&v).map(|(&u, &v)| min_coskew_row(u, v));
    Ok(build(n, seed, CopulaSpec::MinCoskew, rows))
}

/// Mixture copula. `B = 1{w < lambda}` with `w` from its own substream, so
/// `(u, v)` are identical for every `lambda` at a given seed and `B` is
/// pathwise non-decreasing in `lambda`.
pub fn sample_mixture(n: usize, lambda: f64, seed: SeedSpec) -> Result<USample> {
    check_lambda(lambda)?;
    check_n(n)?;
    let u = draws(n, seed, Substream::U);
    let v = draws(n, seed, Substream::V);
    let w = draws(n, seed, Substream::B);
    let rows = u.iter().zip(&v).zip(&w).map(|((&u, &v), &w)| mixture_row(u, v, w < lambda));
    Ok(build(n, seed, CopulaSpec::Mixture { lambda }, rows))
}

/// Gaussian copula: `(Phi(H1), Phi(H2), Phi(H3))` with `H` built from three
/// independent normals (one per substream).
pub fn sample_gaussian(n: usize, params: &GaussianParams, seed: SeedSpec) -> Result<USample> {
    check_n(n)?;
    let z1 = draws(n, seed, Substream::U);
    let z2 = draws(n, seed, Substream::V);
    let z3 = draws(n, seed, Substream::B);
    let rows = (0..n).map(|i| {
        let z = [normal_quantile(z1[i]), normal_quantile(z2[i]), normal_quantile(z3[i])];
        params.correlate(z).map(normal_cdf)
    });
    Ok(build(n, seed, CopulaSpec::Gaussian(*params), rows))
}

pub fn sample_mixing_sum(n: usize, seed: SeedSpec) -> Result<USample> {
    check_n(n)?;
    let u = draws(n, seed, Substream::U);
    Ok(build(n, seed, CopulaSpec::MixingSum, u.iter().map(|&u| mixing_sum_row(u))))
}

pub fn sample_comonotonic(n: usize, seed: SeedSpec) -> Result<USample> {
    check_n(n)?;
    let u = draws(n, seed, Substream::U);
    Ok(build(n, seed, CopulaSpec::Comonotonic, u.iter().map(|&u| [u; 3])))
}

pub fn sample_independence(n: usize, seed: SeedSpec) -> Result<USample> {
    check_n(n)?;
    let columns = [draws(n, seed, Substream::U), draws(n, seed, Substream::V), draws(n, seed, Substream::B)];
    Ok(USample { columns, seed, spec: CopulaSpec::Independence })
}

/// Uniforms closer than this to 0 or 1 are clamped before the quantile map.
pub const CLAMP: f64 = 1e-12;

/// Maps a copula sample to data space, column `j` through `marginals[j]`.
pub fn to_data(us: &USample, marginals: &[Marginal; 3]) -> Result<TriSample> {
    let columns = us
        .columns
        .iter()
        .zip(marginals)
        .map(|(col, m)| col.iter().map(|&u| m.quantile(u.clamp(CLAMP, 1.0 - CLAMP))).collect())
        .collect::<Result<Vec<Vec<f64>>>>()?;
    Ok(TriSample::new(columns)?.with_provenance(us.seed, us.spec))
}
