use std::f64::consts::PI;

use super::basis::EigenBasis;
use crate::error::{Error, Result};
use crate::specfun::gauss_legendre;

/// Polar collocation grid: radial nodes with weights for `r dr` on `(0, 1)`
/// and a uniform angular grid on `[0, 2π)`.
///
/// Ring-only grids (no weights) are used for point evaluation near the
/// boundary; they cannot be used for quadrature or analysis.
#[derive(Clone, Debug, PartialEq)]
pub struct DiskGrid {
    r: Vec<f64>,
    w: Option<Vec<f64>>,
    ntheta: usize,
}

impl DiskGrid {
    /// Gauss–Legendre radial nodes, weights multiplied by `r`.
    pub fn gauss(nr: usize, ntheta: usize) -> Result<Self> {
        if ntheta == 0 {
            return Err(Error::InvalidArgument("ntheta must be positive".into()));
        }
        let rule = gauss_legendre(nr, 0.0, 1.0)?;
        let w = rule.nodes.iter().zip(&rule.weights).map(|(r, w)| r * w).collect();
        Ok(Self { r: rule.nodes, w: Some(w), ntheta })
    }

    /// Smallest grid meeting the transform-exactness sizing for `basis`:
    /// `nr = 3 max_k + 16`, `ntheta = 4 max_m + 16`.
    pub fn for_basis(basis: &EigenBasis) -> Result<Self> {
        Self::gauss(3 * basis.max_k() + 16, 4 * basis.max_m() + 16)
    }

    /// Evaluation rings at the given radii.
    pub fn rings(radii: &[f64], ntheta: usize) -> Result<Self> {
        if ntheta == 0 {
            return Err(Error::InvalidArgument("ntheta must be positive".into()));
        }
        if let Some(r) = radii.iter().find(|r| !(**r >= 0.0 && **r <= 1.0)) {
            return Err(Error::InvalidArgument(format!("ring radius {r} outside [0, 1]")));
        }
        Ok(Self { r: radii.to_vec(), w: None, ntheta })
    }

    /// A Gauss grid with both node counts scaled by `factor` (rounded up).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let nr = (self.r.len() as f64 * factor).ceil() as usize;
        let nt = (self.ntheta as f64 * factor).ceil() as usize;
        Self::gauss(nr, nt)
    }

    pub fn nr(&self) -> usize {
        self.r.len()
    }

    pub fn ntheta(&self) -> usize {
        self.ntheta
    }

    pub fn len(&self) -> usize {
        self.nr() * self.ntheta
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn radii(&self) -> &[f64] {
        &self.r
    }

    /// Radial weights for the measure `r dr`, if this is a quadrature grid.
    pub fn radial_weights(&self) -> Option<&[f64]> {
        self.w.as_deref()
    }

    pub fn theta(&self, l: usize) -> f64 {
        2.0 * PI * l as f64 / self.ntheta as f64
    }

    /// Area weight of node `(i, l)`: `w_i · 2π / ntheta`.
    pub fn area_weights(&self) -> Result<Vec<f64>> {
        let w =
            self.w.as_ref().ok_or_else(|| Error::InvalidArgument("ring grid carries no quadrature weights".into()))?;
        let dth = 2.0 * PI / self.ntheta as f64;
        Ok(w.iter().flat_map(|wi| std::iter::repeat_n(wi * dth, self.ntheta)).collect())
    }

    /// Cartesian coordinates of node `(i, l)`.
    pub fn point(&self, i: usize, l: usize) -> [f64; 2] {
        let (s, c) = self.theta(l).sin_cos();
        [self.r[i] * c, self.r[i] * s]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn area_is_pi() {
        let g = DiskGrid::gauss(20, 36).unwrap();
        let a: f64 = g.area_weights().unwrap().iter().sum();
        assert!((a - PI).abs() < 1e-12);
    }

    #[test]
    fn sizing_for_basis() {
        let b = EigenBasis::new(32, 32).unwrap();
        let g = DiskGrid::for_basis(&b).unwrap();
        assert_eq!((g.nr(), g.ntheta()), (112, 144));
    }

    #[test]
    fn rings_have_no_weights() {
        let g = DiskGrid::rings(&[0.5, 0.9], 64).unwrap();
        assert!(g.area_weights().is_err());
        assert!(DiskGrid::rings(&[1.5], 8).is_err());
    }
}
