use crate::error::Result;
use crate::spectral::{multiply, DiskGrid, EigenBasis, SpectralField, Transform};

use super::differential::transport_grid;

/// `max_θ |f(r, θ)|` for each probe radius.
pub fn boundary_trace(basis: &EigenBasis, f: &SpectralField, ntheta: usize, radii: &[f64]) -> Result<Vec<f64>> {
    let t = Transform::new(basis, &DiskGrid::rings(radii, ntheta)?, 0)?;
    ring_maxima(&t, &t.synthesize(f)?)
}

/// `max_θ |(∇^⊥Λ_D^{-1} f · ∇) g|` on each probe ring, evaluated pointwise
/// from the expansions of `f` and `g` (no projection).
pub fn transport_trace(
    basis: &EigenBasis,
    f: &SpectralField,
    g: &SpectralField,
    ntheta: usize,
    radii: &[f64],
) -> Result<Vec<f64>> {
    let t = Transform::new(basis, &DiskGrid::rings(radii, ntheta)?, 1)?;
    let stream = multiply(basis, f, |l| 1.0 / l);
    ring_maxima(&t, &transport_grid(&t, &stream, g)?)
}

fn ring_maxima(t: &Transform, v: &crate::spectral::GridField) -> Result<Vec<f64>> {
    Ok((0..t.grid().nr()).map(|i| v.ring(i).iter().fold(0.0, |m: f64, x| m.max(x.abs()))).collect())
}
