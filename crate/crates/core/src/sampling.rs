//! Latin hypercube designs and the LHS / mid-point LHS samplers.
//!
//! Column `j` of every sampler draws its permutation from the `(seed, j)`
//! stream and its jitter from a separate stream, so a design is a pure
//! function of `(n, s, seed)`.

use rand::distr::Open01;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::discrepancy::DesignMatrix;
use crate::error::{Error, Result};
use crate::rng::{stream_rng, STREAM_UNIFORM_OFFSET};

/// `s` permutations of `1..=n`, one per column.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatinHypercubeDesign {
    n: usize,
    s: usize,
    perms: Vec<Vec<usize>>,
}

impl LatinHypercubeDesign {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn s(&self) -> usize {
        self.s
    }

    /// `π_j(k)` for run `k` and column `j`, 1-based value.
    pub fn get(&self, k: usize, j: usize) -> usize {
        self.perms[j][k]
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.perms[j]
    }

    fn to_design(&self, mut offset: impl FnMut(usize, usize) -> f64) -> DesignMatrix {
        let nf = self.n as f64;
        let mut values = Vec::with_capacity(self.n * self.s);
        for k in 0..self.n {
            for j in 0..self.s {
                values.push((self.perms[j][k] as f64 - offset(k, j)) / nf);
            }
        }
        DesignMatrix::new(self.n, self.s, values).expect("stratified points lie in the unit cube")
    }
}

fn check(n: usize, s: usize) -> Result<()> {
    if n == 0 || s == 0 {
        return Err(Error::Shape(format!("n and s must be positive (got {n}, {s})")));
    }
    Ok(())
}

pub fn lhd(n: usize, s: usize, seed: u64) -> Result<LatinHypercubeDesign> {
    check(n, s)?;
    let perms = (0..s)
        .map(|j| {
            let mut perm: Vec<usize> = (1..=n).collect();
            perm.shuffle(&mut stream_rng(seed, j as u64));
            perm
        })
        .collect();
    Ok(LatinHypercubeDesign { n, s, perms })
}

/// `x_kj = (π_j(k) − U_kj)/n` with `U_kj` i.i.d. uniform on `(0, 1)`.
pub fn lhs(n: usize, s: usize, seed: u64) -> Result<DesignMatrix> {
    let base = lhd(n, s, seed)?;
    let jitter: Vec<Vec<f64>> = (0..s)
        .map(|j| {
            let rng = stream_rng(seed, STREAM_UNIFORM_OFFSET + j as u64);
            rng.sample_iter(Open01).take(n).collect()
        })
        .collect();
    Ok(base.to_design(|k, j| jitter[j][k]))
}

/// `x_kj = (π_j(k) − 0.5)/n`.
pub fn mlhs(n: usize, s: usize, seed: u64) -> Result<DesignMatrix> {
    Ok(lhd(n, s, seed)?.to_design(|_, _| 0.5))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    Lhs,
    Mlhs,
}

impl Sampler {
    pub fn sample(self, n: usize, s: usize, seed: u64) -> Result<DesignMatrix> {
        match self {
            Sampler::Lhs => lhs(n, s, seed),
            Sampler::Mlhs => mlhs(n, s, seed),
        }
    }
}
