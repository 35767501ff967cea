use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::specfun::{bessel_j, bessel_zeros};

pub const MAX_BASIS_M: usize = 128;
pub const MAX_BASIS_K: usize = 128;

/// One signed mode `(m, k)` of the eigenbasis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EigenMode {
    pub m: i32,
    /// Radial index, starting at 1.
    pub k: usize,
    /// Eigenvalue of `Λ_D`, the zero `j_{|m|,k}`.
    pub lambda: f64,
    pub norm_const: f64,
}

/// Truncated eigensystem: all `|m| <= max_m`, `1 <= k <= max_k`.
///
/// Storage order is `m = 0..=max_m` outer, `k` inner; negative `m` share the
/// eigenvalue and normalisation of `|m|`.
#[derive(Clone, Debug)]
pub struct EigenBasis {
    max_m: usize,
    max_k: usize,
    lambda: Vec<f64>,
    norm: Vec<f64>,
    lambda_max: f64,
}

impl EigenBasis {
    pub fn new(max_m: usize, max_k: usize) -> Result<Self> {
        if max_m > MAX_BASIS_M || max_k > MAX_BASIS_K {
            return Err(Error::InvalidArgument(format!(
                "basis ({max_m}, {max_k}) exceeds the supported ({MAX_BASIS_M}, {MAX_BASIS_K})"
            )));
        }
        if max_k == 0 {
            return Err(Error::InvalidArgument("max_k must be at least 1".into()));
        }
        let mut lambda = Vec::with_capacity((max_m + 1) * max_k);
        let mut norm = Vec::with_capacity((max_m + 1) * max_k);
        for m in 0..=max_m {
            let zeros = bessel_zeros(m as u32, max_k)?;
            for z in zeros {
                let jp = bessel_j(m as u32 + 1, z)?;
                lambda.push(z);
                norm.push(1.0 / (PI.sqrt() * jp.abs()));
            }
        }
        let lambda_max = lambda.iter().copied().fold(0.0, f64::max);
        Ok(Self { max_m, max_k, lambda, norm, lambda_max })
    }

    pub fn max_m(&self) -> usize {
        self.max_m
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    /// Number of stored `(m >= 0, k)` pairs.
    pub fn stored_len(&self) -> usize {
        self.lambda.len()
    }

    /// Number of signed modes, `(2 max_m + 1) max_k`.
    pub fn mode_count(&self) -> usize {
        (2 * self.max_m + 1) * self.max_k
    }

    #[inline]
    pub fn index(&self, m: usize, k0: usize) -> usize {
        m * self.max_k + k0
    }

    /// Eigenvalue of `Λ_D` for `(|m|, k0)` with zero-based radial index.
    #[inline]
    pub fn lambda(&self, m: usize, k0: usize) -> f64 {
        self.lambda[self.index(m, k0)]
    }

    #[inline]
    pub fn norm_const(&self, m: usize, k0: usize) -> f64 {
        self.norm[self.index(m, k0)]
    }

    /// Eigenvalues in storage order.
    pub fn lambdas(&self) -> &[f64] {
        &self.lambda
    }

    pub fn norms(&self) -> &[f64] {
        &self.norm
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    /// Bottom of the spectrum, `j_{0,1}`.
    pub fn lambda_min(&self) -> f64 {
        self.lambda[0]
    }

    pub fn mode(&self, m: i32, k: usize) -> Option<EigenMode> {
        let ma = m.unsigned_abs() as usize;
        if ma > self.max_m || k == 0 || k > self.max_k {
            return None;
        }
        Some(EigenMode { m, k, lambda: self.lambda(ma, k - 1), norm_const: self.norm_const(ma, k - 1) })
    }

    /// All signed modes, `m` from `-max_m` to `max_m`.
    pub fn modes(&self) -> impl Iterator<Item = EigenMode> + '_ {
        let mm = self.max_m as i32;
        (-mm..=mm).flat_map(move |m| (1..=self.max_k).map(move |k| self.mode(m, k).expect("in range")))
    }

    pub fn same_shape(&self, other: &EigenBasis) -> bool {
        self.max_m == other.max_m && self.max_k == other.max_k
    }
}
