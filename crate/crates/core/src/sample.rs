//! Column-major sample tables.

use alloc::vec::Vec;

use crate::copulas::CopulaSpec;
use crate::error::{Error, Result};
use crate::rng::SeedSpec;

/// `n` draws of a trivariate copula (uniform margins), stored by column.
#[derive(Debug, Clone, PartialEq)]
pub struct USample {
    pub columns: [Vec<f64>; 3],
    pub seed: SeedSpec,
    pub spec: CopulaSpec,
}

impl USample {
    pub fn n(&self) -> usize {
        self.columns[0].len()
    }

    pub fn row(&self, i: usize) -> [f64; 3] {
        [self.columns[0][i], self.columns[1][i], self.columns[2][i]]
    }

    pub fn rows(&self) -> impl Iterator<Item = [f64; 3]> + '_ {
        (0..self.n()).map(move |i| self.row(i))
    }
}

/// `n` observations of a `d`-dimensional random vector in data space.
#[derive(Debug, Clone, PartialEq)]
pub struct TriSample {
    columns: Vec<Vec<f64>>,
    pub seed: Option<SeedSpec>,
    pub spec: Option<CopulaSpec>,
}

impl TriSample {
    /// Builds a sample from equal-length columns.
    pub fn new(columns: Vec<Vec<f64>>) -> Result<Self> {
        if let Some(first) = columns.first() {
            for c in &columns[1..] {
                if c.len() != first.len() {
                    return Err(Error::LengthMismatch(first.len(), c.len()));
                }
            }
        }
        Ok(Self { columns, seed: None, spec: None })
    }

    pub fn with_provenance(mut self, seed: SeedSpec, spec: CopulaSpec) -> Self {
        self.seed = Some(seed);
        self.spec = Some(spec);
        self
    }

    pub fn n(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn d(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[f64] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<f64>] {
        &self.columns
    }

    pub fn into_columns(self) -> Vec<Vec<f64>> {
        self.columns
    }
}
