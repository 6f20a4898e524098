//! One-pass multivariate co-moment accumulation.
//!
//! Rows are folded in with Welford-style updates (Pébay's formulas for the
//! third-order co-moments). Columns are processed in fixed-size chunks that
//! are combined by a pairwise tree whose shape depends only on `n`, so a
//! parallel reduction over the same chunks gives bit-identical results.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Rows per leaf chunk of the reduction tree.
pub const CHUNK: usize = 1024;

/// Running means and centred co-moment sums of a `d`-dimensional stream.
///
/// `m2[i*d + j]` holds `sum (x_i - mean_i)(x_j - mean_j)`; when third-order
/// sums are tracked, `m3[(i*d + j)*d + k]` holds the triple product sum.
#[derive(Debug, Clone, PartialEq)]
pub struct CoMoments {
    dim: usize,
    count: u64,
    mean: Vec<f64>,
    m2: Vec<f64>,
    m3: Option<Vec<f64>>,
    delta: Vec<f64>,
}

impl CoMoments {
    pub fn new(dim: usize, third_order: bool) -> Self {
        Self {
            dim,
            count: 0,
            mean: vec![0.0; dim],
            m2: vec![0.0; dim * dim],
            m3: third_order.then(|| vec![0.0; dim * dim * dim]),
            delta: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self, i: usize) -> f64 {
        self.mean[i]
    }

    pub fn push(&mut self, row: &[f64]) {
        debug_assert_eq!(row.len(), self.dim);
        let d = self.dim;
        let n1 = self.count as f64;
        let n = n1 + 1.0;
        for ((dl, x), m) in self.delta.iter_mut().zip(row).zip(&self.mean) {
            *dl = x - m;
        }
        if let Some(m3) = self.m3.as_mut() {
            // Uses the pre-update second-order sums.
            let a = n1 * (n1 - 1.0) / (n * n);
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        let (di, dj, dk) = (self.delta[i], self.delta[j], self.delta[k]);
                        let corr = dk * self.m2[i * d + j] + (di * self.m2[j * d + k] + dj * self.m2[i * d + k]);
                        m3[(i * d + j) * d + k] += a * (di * dj) * dk - corr / n;
                    }
                }
            }
        }
        let b = n1 / n;
        for i in 0..d {
            for j in 0..d {
                self.m2[i * d + j] += b * (self.delta[i] * self.delta[j]);
            }
        }
        for i in 0..d {
            self.mean[i] += self.delta[i] / n;
        }
        self.count += 1;
    }

    /// Combines the statistics of two disjoint batches.
    pub fn merge(&mut self, other: &Self) {
        debug_assert_eq!(self.dim, other.dim);
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = other.clone();
            return;
        }
        let d = self.dim;
        let na = self.count as f64;
        let nb = other.count as f64;
        let n = na + nb;
        for i in 0..d {
            self.delta[i] = other.mean[i] - self.mean[i];
        }
        let del = &self.delta;
        if let (Some(ma), Some(mb)) = (self.m3.as_mut(), other.m3.as_ref()) {
            let a = na * nb * (na - nb) / (n * n);
            let c = |i: usize, j: usize| na * other.m2[i * d + j] - nb * self.m2[i * d + j];
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        let idx = (i * d + j) * d + k;
                        let corr = c(i, j) * del[k] + (c(j, k) * del[i] + c(i, k) * del[j]);
                        ma[idx] += mb[idx] + a * (del[i] * del[j]) * del[k] + corr / n;
                    }
                }
            }
        }
        let b = na * nb / n;
        for i in 0..d {
            for j in 0..d {
                self.m2[i * d + j] += other.m2[i * d + j] + b * (del[i] * del[j]);
            }
        }
        for (m, dl) in self.mean.iter_mut().zip(del) {
            *m += dl * nb / n;
        }
        self.count += other.count;
    }

    /// Accumulates rows `range` of the given columns.
    pub fn from_rows(columns: &[&[f64]], range: core::ops::Range<usize>, third_order: bool) -> Self {
        let mut acc = Self::new(columns.len(), third_order);
        let mut row = vec![0.0; columns.len()];
        for r in range {
            for (x, c) in row.iter_mut().zip(columns) {
                *x = c[r];
            }
            acc.push(&row);
        }
        acc
    }

    /// Accumulates whole columns: fixed chunks merged pairwise.
    pub fn from_columns(columns: &[&[f64]], third_order: bool) -> Result<Self> {
        let n = check_columns(columns)?;
        let leaves = chunk_ranges(n).map(|r| Self::from_rows(columns, r, third_order)).collect();
        Ok(merge_tree(leaves).unwrap_or_else(|| Self::new(columns.len(), third_order)))
    }

    /// Population (divide by `n`) covariance.
    pub fn covariance(&self, i: usize, j: usize) -> f64 {
        self.m2[i * self.dim + j] / self.count as f64
    }

    /// Population standard deviation.
    pub fn sd(&self, i: usize) -> f64 {
        libm::sqrt(self.covariance(i, i))
    }

    /// `E[(x_i - mu_i)(x_j - mu_j)(x_k - mu_k)]` with `1/n` normalisation.
    pub fn third_comoment(&self, i: usize, j: usize, k: usize) -> Option<f64> {
        let d = self.dim;
        self.m3.as_ref().map(|m| m[(i * d + j) * d + k] / self.count as f64)
    }

    /// Pearson correlation of components `i` and `j`.
    pub fn correlation(&self, i: usize, j: usize) -> Result<f64> {
        let (si, sj) = (self.sd(i), self.sd(j));
        if !(si > 0.0 && sj > 0.0) {
            return Err(Error::DegenerateColumn);
        }
        Ok((self.covariance(i, j) / (si * sj)).clamp(-1.0, 1.0))
    }

    /// Standardized third co-moment of components `i`, `j`, `k`.
    pub fn coskewness(&self, i: usize, j: usize, k: usize) -> Result<f64> {
        let (si, sj, sk) = (self.sd(i), self.sd(j), self.sd(k));
        if !(si > 0.0 && sj > 0.0 && sk > 0.0) {
            return Err(Error::DegenerateColumn);
        }
        let m = self.third_comoment(i, j, k).expect("third-order moments not tracked");
        Ok(m / ((si * sj) * sk))
    }
}

/// Common length of `columns`, which must be non-empty.
pub fn check_columns(columns: &[&[f64]]) -> Result<usize> {
    let n = columns.first().map_or(0, |c| c.len());
    for c in columns {
        if c.len() != n {
            return Err(Error::LengthMismatch(n, c.len()));
        }
    }
    Ok(n)
}

/// Leaf ranges of the reduction tree for `n` rows.
pub fn chunk_ranges(n: usize) -> impl Iterator<Item = core::ops::Range<usize>> {
    (0..n).step_by(CHUNK).map(move |s| s..(s + CHUNK).min(n))
}

/// Merges accumulators pairwise, level by level, in index order.
pub fn merge_tree(mut level: Vec<CoMoments>) -> Option<CoMoments> {
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.into_iter();
        while let Some(mut a) = it.next() {
            if let Some(b) = it.next() {
                a.merge(&b);
            }
            next.push(a);
        }
        level = next;
    }
    level.pop()
}
