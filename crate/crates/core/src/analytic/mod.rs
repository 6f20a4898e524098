//! Closed-form and quadrature predictions.

pub mod quadrature;

use core::f64::consts::PI;

use libm::{asin, exp, sin};

use crate::copulas::check_correlation_triple;
use crate::error::{Error, Result};
use crate::marginals::Marginal;

/// Absolute tolerance for the coskewness bound integral.
pub const BOUND_TOLERANCE: f64 = 1e-8;
const MAX_SEGMENTS: usize = 4000;

/// Coskewness range attainable with three given symmetric marginals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsResult {
    pub s_max: f64,
    pub s_min: f64,
    pub quadrature_error: f64,
}

/// Upper coskewness bound `∫₀¹ G₁⁻¹(u) G₂⁻¹(u) G₃⁻¹(u) du`, where `Gᵢ` is the
/// law of `|(Xᵢ - μᵢ)/σᵢ|`; the lower bound is its negative.
///
/// With any unbounded marginal the integral is taken in `t = -ln(1 - u)`,
/// itself mapped to `(0, 1)` by `t = s / (1 - s)`, and each `Gᵢ⁻¹` is
/// evaluated from the tail probability `e^{-t}`.
pub fn coskew_bound(marginals: &[Marginal; 3]) -> Result<BoundsResult> {
    if let Some(m) = marginals.iter().find(|m| !m.is_symmetric()) {
        return Err(Error::UnsupportedMarginal(m.name()));
    }
    let product_tail = |q: f64| -> f64 {
        marginals.iter().map(|m| m.abs_std_quantile_tail(q).expect("symmetric marginal, q in (0, 1]")).product()
    };
    let quad = if marginals.iter().any(Marginal::is_unbounded) {
        let integrand = |s: f64| {
            let t = s / (1.0 - s);
            let q = exp(-t);
            if q < f64::MIN_POSITIVE {
                return 0.0;
            }
            let jac = 1.0 / ((1.0 - s) * (1.0 - s));
            product_tail(q) * q * jac
        };
        quadrature::integrate(integrand, 0.0, 1.0, BOUND_TOLERANCE, MAX_SEGMENTS)
    } else {
        quadrature::integrate(|u| product_tail(1.0 - u), 0.0, 1.0, BOUND_TOLERANCE, MAX_SEGMENTS)
    };
    if !(quad.error <= BOUND_TOLERANCE) || !quad.value.is_finite() {
        return Err(Error::NonConvergence { error: quad.error, tolerance: BOUND_TOLERANCE });
    }
    Ok(BoundsResult { s_max: quad.value, s_min: -quad.value, quadrature_error: quad.error })
}

/// Coskewness of the mixture copula: `λ S̄ + (1 - λ) S̲`.
pub fn mixture_prediction(lambda: f64, bounds: &BoundsResult) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParameter { name: "lambda", value: lambda });
    }
    Ok(lambda * bounds.s_max + (1.0 - lambda) * bounds.s_min)
}

fn check_unit(name: &'static str, r: f64) -> Result<()> {
    if (-1.0..=1.0).contains(&r) {
        Ok(())
    } else {
        Err(Error::InvalidParameter { name, value: r })
    }
}

/// Spearman correlation implied by Pearson correlation `rho` under a
/// Gaussian copula: `(6/π) asin(ρ/2)`.
pub fn spearman_from_pearson_gaussian(rho: f64) -> Result<f64> {
    check_unit("rho", rho)?;
    Ok(6.0 / PI * asin(rho / 2.0))
}

/// Inverse of [`spearman_from_pearson_gaussian`]: `2 sin(π ρˢ / 6)`.
pub fn pearson_from_spearman_gaussian(rho_s: f64) -> Result<f64> {
    check_unit("rho_s", rho_s)?;
    Ok(2.0 * sin(PI * rho_s / 6.0))
}

/// `E[Φ(Hᵢ) Φ(Hⱼ)] = asin(ρ/2) / (2π) + 1/4` for standard bivariate normal
/// `(Hᵢ, Hⱼ)` with correlation `ρ`.
pub fn uniform_product_moment_gaussian(rho: f64) -> Result<f64> {
    check_unit("rho", rho)?;
    Ok(asin(rho / 2.0) / (2.0 * PI) + 0.25)
}

/// `P(Y₁ ≤ 0, Y₂ ≤ 0, Y₃ ≤ 0)` for a centred trivariate normal with the
/// given correlations.
pub fn trivariate_orthant_prob(r12: f64, r13: f64, r23: f64) -> Result<f64> {
    check_correlation_triple(r12, r13, r23)?;
    Ok((asin(r12) + asin(r13) + asin(r23)) / (4.0 * PI) + 0.125)
}

/// Standardized rank coskewness of a Gaussian copula, assembled from the
/// orthant probability of the half-correlation triple and the pairwise
/// uniform product moments. Identically zero.
pub fn rank_coskew_gaussian(r12: f64, r13: f64, r23: f64) -> Result<f64> {
    check_correlation_triple(r12, r13, r23)?;
    let triple = trivariate_orthant_prob(r12 / 2.0, r13 / 2.0, r23 / 2.0)?;
    let pairs = (asin(r12 / 2.0) + asin(r13 / 2.0) + asin(r23 / 2.0)) / (4.0 * PI);
    Ok(32.0 * (triple - pairs - 0.125))
}
