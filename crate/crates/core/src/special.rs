//! Special functions: standard normal and Student-t distribution functions.

#![allow(clippy::excessive_precision)]

use core::f64::consts::{FRAC_1_SQRT_2, PI};

use libm::{erfc, exp, lgamma, log, log1p, sqrt};

const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

/// Standard normal CDF.
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * erfc(-x * FRAC_1_SQRT_2)
}

/// Standard normal density.
pub fn normal_pdf(x: f64) -> f64 {
    exp(-0.5 * x * x) / SQRT_2PI
}

// Acklam's rational approximation, relative error ~1.15e-9 before refinement.
const A: [f64; 6] = [
    -3.969_683_028_665_376e1,
    2.209_460_984_245_205e2,
    -2.759_285_104_469_687e2,
    1.383_577_518_672_69e2,
    -3.066_479_806_614_716e1,
    2.506_628_277_459_239,
];
const B: [f64; 5] = [
    -5.447_609_879_822_406e1,
    1.615_858_368_580_409e2,
    -1.556_989_798_598_866e2,
    6.680_131_188_771_972e1,
    -1.328_068_155_288_572e1,
];
const C: [f64; 6] = [
    -7.784_894_002_430_293e-3,
    -3.223_964_580_411_365e-1,
    -2.400_758_277_161_838,
    -2.549_732_539_343_734,
    4.374_664_141_464_968,
    2.938_163_982_698_783,
];
const D: [f64; 4] = [7.784_695_709_041_462e-3, 3.224_671_290_700_398e-1, 2.445_134_137_142_996, 3.754_408_661_907_416];
const P_LOW: f64 = 0.02425;

fn acklam(p: f64) -> f64 {
    if p < P_LOW {
        let q = sqrt(-2.0 * log(p));
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = sqrt(-2.0 * log1p(-p));
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

/// Standard normal quantile for `p` in (0, 1).
///
/// Acklam's approximation followed by one Halley step against `erfc`.
/// The refinement is done on the lower tail so results satisfy
/// `normal_quantile(p) == -normal_quantile(1 - p)` up to rounding.
pub fn normal_quantile(p: f64) -> f64 {
    debug_assert!(p > 0.0 && p < 1.0);
    if p > 0.5 {
        return -normal_quantile_lower(1.0 - p);
    }
    normal_quantile_lower(p)
}

fn normal_quantile_lower(p: f64) -> f64 {
    if p == 0.5 {
        return 0.0;
    }
    let x = acklam(p);
    let e = normal_cdf(x) - p;
    let u = e * SQRT_2PI * exp(0.5 * x * x);
    x - u / (1.0 + 0.5 * x * u)
}

fn ln_beta(a: f64, b: f64) -> f64 {
    lgamma(a) + lgamma(b) - lgamma(a + b)
}

/// Continued fraction for the incomplete beta function (modified Lentz).
fn beta_cf(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    let qab = a + b;
    let qap = a + 1.0;
    let qam = a - 1.0;
    let mut c = 1.0;
    let mut d = 1.0 - qab * x / qap;
    if d.abs() < TINY {
        d = TINY;
    }
    d = 1.0 / d;
    let mut h = d;
    for m in 1..500 {
        let m = m as f64;
        let m2 = 2.0 * m;
        let aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        h *= d * c;
        let aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if d.abs() < TINY {
            d = TINY;
        }
        c = 1.0 + aa / c;
        if c.abs() < TINY {
            c = TINY;
        }
        d = 1.0 / d;
        let del = d * c;
        h *= del;
        if (del - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

/// Regularized incomplete beta `I_x(a, b)`; `y` must equal `1 - x` and is
/// passed separately so callers can supply it without cancellation.
pub fn reg_inc_beta(a: f64, b: f64, x: f64, y: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if y <= 0.0 {
        return 1.0;
    }
    let ln_front = a * log(x) + b * log(y) - ln_beta(a, b);
    if x < (a + 1.0) / (a + b + 2.0) {
        exp(ln_front) * beta_cf(a, b, x) / a
    } else {
        1.0 - exp(ln_front) * beta_cf(b, a, y) / b
    }
}

/// Student-t with `df` degrees of freedom (unit scale).
#[derive(Debug, Clone, Copy)]
pub(crate) struct StudentT {
    df: f64,
    ln_norm: f64,
}

impl StudentT {
    pub(crate) fn new(df: f64) -> Self {
        let ln_norm = lgamma(0.5 * (df + 1.0)) - lgamma(0.5 * df) - 0.5 * log(df * PI);
        Self { df, ln_norm }
    }

    pub(crate) fn pdf(&self, t: f64) -> f64 {
        exp(self.ln_norm - 0.5 * (self.df + 1.0) * log1p(t * t / self.df))
    }

    /// `P(T <= t)` for `t <= 0`, accurate deep into the tail.
    fn lower_tail(&self, t: f64) -> f64 {
        let t2 = t * t;
        let x = self.df / (self.df + t2);
        let y = t2 / (self.df + t2);
        0.5 * reg_inc_beta(0.5 * self.df, 0.5, x, y)
    }

    pub(crate) fn cdf(&self, t: f64) -> f64 {
        if t <= 0.0 {
            self.lower_tail(t)
        } else {
            1.0 - self.lower_tail(-t)
        }
    }

    pub(crate) fn quantile(&self, p: f64) -> f64 {
        if p > 0.5 {
            -self.quantile_lower(1.0 - p)
        } else {
            self.quantile_lower(p)
        }
    }

    /// Solves `F(t) = p` for `p <= 1/2` by safeguarded Newton on `ln F`.
    pub(crate) fn quantile_lower(&self, p: f64) -> f64 {
        if p >= 0.5 {
            return 0.0;
        }
        let target = log(p);
        let mut hi = 0.0;
        let mut lo = -1.0;
        while self.lower_tail(lo) > p {
            hi = lo;
            lo *= 2.0;
        }
        // Cornish-Fisher start, clamped into the bracket.
        let z = normal_quantile_lower(p);
        let g1 = (z * z * z + z) / 4.0;
        let g2 = (5.0 * z * z * z * z * z + 16.0 * z * z * z + 3.0 * z) / 96.0;
        let mut t = z + g1 / self.df + g2 / (self.df * self.df);
        if !(t > lo && t < hi) {
            t = 0.5 * (lo + hi);
        }
        for _ in 0..200 {
            let f = self.lower_tail(t);
            let g = log(f) - target;
            if g == 0.0 {
                return t;
            }
            if g > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let step = g * f / self.pdf(t);
            if step.abs() <= 1e-15 * t.abs() {
                return t - step;
            }
            t = if t - step > lo && t - step < hi { t - step } else { 0.5 * (lo + hi) };
        }
        t
    }
}
