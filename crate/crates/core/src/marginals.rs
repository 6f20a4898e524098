//! Univariate marginal distributions.

use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use libm::{exp, expm1, log, log1p, sqrt};

use crate::error::{Error, Result};
use crate::special::{normal_cdf, normal_quantile, StudentT};

/// A continuous univariate marginal.
///
/// Laplace is the unit-scale standard Laplace (mean 0, variance 2).
/// StudentT requires `df > 3` so that third absolute moments exist.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Marginal {
    StandardNormal,
    Uniform01,
    Laplace,
    StudentT { df: f64 },
    Exponential { rate: f64 },
}

impl Marginal {
    pub fn student_t(df: f64) -> Result<Self> {
        if !(df > 3.0) || !df.is_finite() {
            return Err(Error::InvalidParameter { name: "df", value: df });
        }
        Ok(Self::StudentT { df })
    }

    pub fn exponential(rate: f64) -> Result<Self> {
        if !(rate > 0.0) || !rate.is_finite() {
            return Err(Error::InvalidParameter { name: "rate", value: rate });
        }
        Ok(Self::Exponential { rate })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::StandardNormal => "normal",
            Self::Uniform01 => "uniform",
            Self::Laplace => "laplace",
            Self::StudentT { .. } => "student-t",
            Self::Exponential { .. } => "exponential",
        }
    }

    pub fn mean(&self) -> f64 {
        match *self {
            Self::Uniform01 => 0.5,
            Self::Exponential { rate } => 1.0 / rate,
            _ => 0.0,
        }
    }

    pub fn sd(&self) -> f64 {
        match *self {
            Self::StandardNormal => 1.0,
            Self::Uniform01 => 1.0 / sqrt(12.0),
            Self::Laplace => core::f64::consts::SQRT_2,
            Self::StudentT { df } => sqrt(df / (df - 2.0)),
            Self::Exponential { rate } => 1.0 / rate,
        }
    }

    pub fn is_symmetric(&self) -> bool {
        !matches!(self, Self::Exponential { .. })
    }

    /// Whether the support is unbounded above.
    pub fn is_unbounded(&self) -> bool {
        !matches!(self, Self::Uniform01)
    }

    /// `F^{-1}(p)` for `p` in (0, 1).
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::ProbabilityOutOfRange(p));
        }
        Ok(self.quantile_unchecked(p))
    }

    pub(crate) fn quantile_unchecked(&self, p: f64) -> f64 {
        match *self {
            Self::StandardNormal => normal_quantile(p),
            Self::Uniform01 => p,
            Self::Laplace => {
                if p <= 0.5 {
                    log(2.0 * p)
                } else {
                    -log(2.0 * (1.0 - p))
                }
            }
            Self::StudentT { df } => StudentT::new(df).quantile(p),
            Self::Exponential { rate } => -log1p(-p) / rate,
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        match *self {
            Self::StandardNormal => normal_cdf(x),
            Self::Uniform01 => x.clamp(0.0, 1.0),
            Self::Laplace => {
                if x < 0.0 {
                    0.5 * exp(x)
                } else {
                    1.0 - 0.5 * exp(-x)
                }
            }
            Self::StudentT { df } => StudentT::new(df).cdf(x),
            Self::Exponential { rate } => {
                if x <= 0.0 {
                    0.0
                } else {
                    -expm1(-rate * x)
                }
            }
        }
    }

    /// Quantile `G^{-1}(u)` of `|(X - mu) / sigma|`, for symmetric marginals
    /// and `u` in [0, 1).
    pub fn abs_std_quantile(&self, u: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&u) {
            return Err(Error::ProbabilityOutOfRange(u));
        }
        self.abs_std_quantile_tail(1.0 - u)
    }

    /// `G^{-1}(1 - q)` evaluated from the upper-tail probability `q` in (0, 1],
    /// without forming `1 - q`.
    pub fn abs_std_quantile_tail(&self, q: f64) -> Result<f64> {
        if !self.is_symmetric() {
            return Err(Error::UnsupportedMarginal(self.name()));
        }
        if !(q > 0.0 && q <= 1.0) {
            return Err(Error::ProbabilityOutOfRange(q));
        }
        let lower = if q == 1.0 { self.mean() } else { self.quantile_unchecked(0.5 * q) };
        Ok(((self.mean() - lower) / self.sd()).abs())
    }
}

impl fmt::Display for Marginal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::StandardNormal => f.write_str("normal"),
            Self::Uniform01 => f.write_str("uniform"),
            Self::Laplace => f.write_str("laplace"),
            Self::StudentT { df } => write!(f, "t:{df}"),
            Self::Exponential { rate } => write!(f, "exp:{rate}"),
        }
    }
}

impl FromStr for Marginal {
    type Err = Error;

    /// Parses `normal`, `uniform`, `laplace`, `t:<df>` or `exp:<rate>`.
    fn from_str(s: &str) -> Result<Self> {
        let token = s.trim();
        let bad = || Error::Parse { what: "marginal", token: token.to_string() };
        let (head, arg) = match token.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (token, None),
        };
        let param = |a: Option<&str>| -> Result<f64> { a.ok_or_else(bad)?.trim().parse::<f64>().map_err(|_| bad()) };
        match (head, arg) {
            ("normal", None) => Ok(Self::StandardNormal),
            ("uniform", None) => Ok(Self::Uniform01),
            ("laplace", None) => Ok(Self::Laplace),
            ("t", a) => Self::student_t(param(a)?),
            ("exp", a) => Self::exponential(param(a)?),
            _ => Err(bad()),
        }
    }
}
