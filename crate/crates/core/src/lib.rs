//! Trivariate dependence models with controlled coskewness and correlation.
//!
//! The crate samples the extremal-coskewness copulas, their Bernoulli
//! mixture, the Gaussian copula and the classic comonotonic / mixing /
//! independence structures, maps them onto arbitrary marginals, and
//! estimates Pearson and Spearman correlation, coskewness, standardized rank
//! coskewness and event-conditional correlation from the resulting samples.
//! Closed-form and quadrature predictions live in [`analytic`].
//!
//! Everything here is `no_std` (with `alloc`). File formats, the experiment
//! drivers and the command-line tool live in the companion `coskew` crate.

#![cfg_attr(not(test), no_std)]
// Negated comparisons are deliberate: NaN must fail the range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analytic;
pub mod copulas;
pub mod error;
pub mod estimators;
pub mod marginals;
pub mod moments;
pub mod rng;
pub mod sample;
pub mod special;
pub mod sum;

pub use analytic::{
    coskew_bound, mixture_prediction, pearson_from_spearman_gaussian, rank_coskew_gaussian,
    spearman_from_pearson_gaussian, trivariate_orthant_prob, uniform_product_moment_gaussian, BoundsResult,
};
pub use copulas::{to_data, CopulaSpec, GaussianParams};
pub use error::{Error, Result};
pub use estimators::{
    build_event_mask, conditional_corr, coskew_matrix, coskewness, pearson_corr, rank_coskewness, rank_transform,
    spearman_rho, CoskewMatrix, EventSpec, RankMode, MIN_EVENT_ROWS,
};
pub use marginals::Marginal;
pub use rng::SeedSpec;
pub use sample::{TriSample, USample};
