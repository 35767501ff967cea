use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use super::basis::EigenBasis;
use super::grid::DiskGrid;
use crate::error::{Error, Result};

/// A real scalar field in coefficient space.
///
/// Only `m >= 0` coefficients are stored; `c(-m, k) = conj(c(m, k))` and the
/// `m = 0` coefficients are real.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    max_m: usize,
    max_k: usize,
    coeffs: Vec<Complex64>,
}

impl SpectralField {
    pub fn zeros(basis: &EigenBasis) -> Self {
        Self::zeros_shape(basis.max_m(), basis.max_k())
    }

    pub fn zeros_shape(max_m: usize, max_k: usize) -> Self {
        Self { max_m, max_k, coeffs: vec![Complex64::new(0.0, 0.0); (max_m + 1) * max_k] }
    }

    /// Builds a field from stored (`m >= 0`) coefficients; imaginary parts of
    /// `m = 0` coefficients are discarded.
    pub fn from_coeffs(max_m: usize, max_k: usize, mut coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != (max_m + 1) * max_k {
            return Err(Error::SizeMismatch(format!(
                "expected {} coefficients for ({max_m}, {max_k}), got {}",
                (max_m + 1) * max_k,
                coeffs.len()
            )));
        }
        for c in coeffs.iter_mut().take(max_k) {
            c.im = 0.0;
        }
        Ok(Self { max_m, max_k, coeffs })
    }

    /// Unit coefficient on the real mode built from `(m, k)`: for `m = 0` this
    /// is `e_{0,k}`, otherwise `e_{m,k} + e_{-m,k}` scaled to unit L² norm.
    pub fn unit_mode(basis: &EigenBasis, m: usize, k: usize) -> Self {
        let mut f = Self::zeros(basis);
        let v = if m == 0 { 1.0 } else { std::f64::consts::FRAC_1_SQRT_2 };
        f.set(m as i32, k, Complex64::new(v, 0.0));
        f
    }

    pub fn max_m(&self) -> usize {
        self.max_m
    }

    pub fn max_k(&self) -> usize {
        self.max_k
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.max_m, self.max_k)
    }

    pub fn matches(&self, basis: &EigenBasis) -> bool {
        self.max_m == basis.max_m() && self.max_k == basis.max_k()
    }

    pub fn check(&self, basis: &EigenBasis) -> Result<()> {
        if self.matches(basis) {
            Ok(())
        } else {
            Err(Error::SizeMismatch(format!(
                "field shape {:?} does not match basis ({}, {})",
                self.shape(),
                basis.max_m(),
                basis.max_k()
            )))
        }
    }

    /// Coefficient of signed mode `(m, k)`, `k >= 1`.
    pub fn get(&self, m: i32, k: usize) -> Complex64 {
        let c = self.coeffs[m.unsigned_abs() as usize * self.max_k + (k - 1)];
        if m < 0 {
            c.conj()
        } else {
            c
        }
    }

    /// Sets signed mode `(m, k)`; its conjugate partner follows.
    pub fn set(&mut self, m: i32, k: usize, value: Complex64) {
        let v = if m < 0 { value.conj() } else { value };
        let v = if m == 0 { Complex64::new(v.re, 0.0) } else { v };
        self.coeffs[m.unsigned_abs() as usize * self.max_k + (k - 1)] = v;
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    /// Multiplicity of stored slot `idx` in sums over signed modes.
    #[inline]
    pub fn multiplicity(&self, idx: usize) -> f64 {
        if idx < self.max_k {
            1.0
        } else {
            2.0
        }
    }

    /// Real L² inner product over the disk.
    pub fn dot(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .enumerate()
            .map(|(i, (a, b))| self.multiplicity(i) * (a * b.conj()).re)
            .sum()
    }

    /// Parseval: L² norm from the coefficients.
    pub fn l2_norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn scale(&self, a: f64) -> Self {
        self.map_indexed(|_, c| c * a)
    }

    /// `self + a * other`.
    pub fn axpy(&self, a: f64, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "field shapes differ");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(x, y)| x + y * a).collect();
        Self { coeffs, ..*self }
    }

    pub fn map_indexed(&self, f: impl Fn(usize, Complex64) -> Complex64) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, &c)| f(i, c)).collect();
        let mut out = Self { coeffs, ..*self };
        for c in out.coeffs.iter_mut().take(self.max_k) {
            c.im = 0.0;
        }
        out
    }

    /// Truncation (or zero-padding) to another basis shape.
    pub fn resized(&self, max_m: usize, max_k: usize) -> Self {
        let mut out = Self::zeros_shape(max_m, max_k);
        for m in 0..=max_m.min(self.max_m) {
            for k0 in 0..max_k.min(self.max_k) {
                out.coeffs[m * max_k + k0] = self.coeffs[m * self.max_k + k0];
            }
        }
        out
    }

    /// Rotation of the field by angle `alpha`: `f(r, θ - alpha)`.
    pub fn rotated(&self, alpha: f64) -> Self {
        let k = self.max_k;
        self.map_indexed(|i, c| c * Complex64::from_polar(1.0, -((i / k) as f64) * alpha))
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

impl Add for &SpectralField {
    type Output = SpectralField;
    fn add(self, rhs: Self) -> SpectralField {
        self.axpy(1.0, rhs)
    }
}

impl Sub for &SpectralField {
    type Output = SpectralField;
    fn sub(self, rhs: Self) -> SpectralField {
        self.axpy(-1.0, rhs)
    }
}

impl Mul<f64> for &SpectralField {
    type Output = SpectralField;
    fn mul(self, a: f64) -> SpectralField {
        self.scale(a)
    }
}

impl Neg for &SpectralField {
    type Output = SpectralField;
    fn neg(self) -> SpectralField {
        self.scale(-1.0)
    }
}

/// Real values at every node of a [`DiskGrid`], ring-major.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField {
    nr: usize,
    ntheta: usize,
    values: Vec<f64>,
}

impl GridField {
    pub fn zeros(grid: &DiskGrid) -> Self {
        Self { nr: grid.nr(), ntheta: grid.ntheta(), values: vec![0.0; grid.len()] }
    }

    pub fn from_values(grid: &DiskGrid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::SizeMismatch(format!("grid has {} nodes, got {} values", grid.len(), values.len())));
        }
        Ok(Self { nr: grid.nr(), ntheta: grid.ntheta(), values })
    }

    /// Samples `f(x, y)` at every node.
    pub fn sample(grid: &DiskGrid, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(grid.len());
        for i in 0..grid.nr() {
            for l in 0..grid.ntheta() {
                let [x, y] = grid.point(i, l);
                values.push(f(x, y));
            }
        }
        Self { nr: grid.nr(), ntheta: grid.ntheta(), values }
    }

    pub fn nr(&self) -> usize {
        self.nr
    }

    pub fn ntheta(&self) -> usize {
        self.ntheta
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn at(&self, i: usize, l: usize) -> f64 {
        self.values[i * self.ntheta + l]
    }

    pub fn ring(&self, i: usize) -> &[f64] {
        &self.values[i * self.ntheta..(i + 1) * self.ntheta]
    }

    pub fn fits(&self, grid: &DiskGrid) -> bool {
        self.nr == grid.nr() && self.ntheta == grid.ntheta()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |a, v| a.max(v.abs()))
    }

    /// Index `(i, l)` of the largest `|value|`.
    pub fn argmax_abs(&self) -> (usize, usize) {
        let mut best = 0;
        for (n, v) in self.values.iter().enumerate() {
            if v.abs() > self.values[best].abs() {
                best = n;
            }
        }
        (best / self.ntheta, best % self.ntheta)
    }

    pub fn is_finite(&self) -> bool {
        self.values.iter().all(|v| v.is_finite())
    }

    /// Quadrature of the field over the disk.
    pub fn integrate(&self, grid: &DiskGrid) -> Result<f64> {
        self.fit_check(grid)?;
        let w = grid.area_weights()?;
        Ok(self.values.iter().zip(&w).map(|(v, w)| v * w).sum())
    }

    /// `L^p` norm by quadrature; `p = ∞` is the grid maximum.
    pub fn lp_norm(&self, grid: &DiskGrid, p: f64) -> Result<f64> {
        if p.is_infinite() {
            return Ok(self.max_abs());
        }
        if !(p >= 1.0) {
            return Err(Error::InvalidArgument(format!("L^p exponent {p} < 1")));
        }
        self.fit_check(grid)?;
        let w = grid.area_weights()?;
        let s: f64 = self.values.iter().zip(&w).map(|(v, w)| w * v.abs().powf(p)).sum();
        Ok(s.powf(1.0 / p))
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        assert_eq!((self.nr, self.ntheta), (other.nr, other.ntheta), "grid shapes differ");
        let values = self.values.iter().zip(&other.values).map(|(a, b)| f(*a, *b)).collect();
        Self { values, ..*self }
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self { values: self.values.iter().map(|v| f(*v)).collect(), ..*self }
    }

    fn fit_check(&self, grid: &DiskGrid) -> Result<()> {
        if self.fits(grid) {
            Ok(())
        } else {
            Err(Error::SizeMismatch(format!(
                "field is {}x{}, grid is {}x{}",
                self.nr,
                self.ntheta,
                grid.nr(),
                grid.ntheta()
            )))
        }
    }
}
