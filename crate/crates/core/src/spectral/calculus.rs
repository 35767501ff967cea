use super::basis::EigenBasis;
use super::field::SpectralField;
use crate::error::{Error, Result};

/// Generator of the dissipative semigroup.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Generator {
    /// `Λ_D`
    Lambda,
    /// `-Δ_D = Λ_D²`
    NegLaplacian,
    /// `Λ_D + ε Λ_D²`
    Viscous { epsilon: f64 },
}

impl Generator {
    pub fn symbol(&self, lambda: f64) -> f64 {
        match *self {
            Generator::Lambda => lambda,
            Generator::NegLaplacian => lambda * lambda,
            Generator::Viscous { epsilon } => lambda + epsilon * lambda * lambda,
        }
    }
}

/// `σ(Λ_D) f`: coefficient-wise multiplication by `σ(λ)`.
pub fn apply_multiplier(basis: &EigenBasis, f: &SpectralField, sigma: impl Fn(f64) -> f64) -> Result<SpectralField> {
    f.check(basis)?;
    let weights: Vec<f64> = basis.lambdas().iter().map(|&l| sigma(l)).collect();
    if let Some((i, w)) = weights.iter().enumerate().find(|(_, w)| !w.is_finite()) {
        return Err(Error::NonFinite(format!("multiplier is {w} at λ = {}", basis.lambdas()[i])));
    }
    Ok(f.map_indexed(|i, c| c * weights[i]))
}

/// Multiplier that is finite on the whole spectrum by construction.
pub(crate) fn multiply(basis: &EigenBasis, f: &SpectralField, sigma: impl Fn(f64) -> f64) -> SpectralField {
    let lam = basis.lambdas();
    f.map_indexed(|i, c| c * sigma(lam[i]))
}

/// `e^{-t G} f` for the chosen generator.
pub fn semigroup(basis: &EigenBasis, t: f64, f: &SpectralField, generator: Generator) -> Result<SpectralField> {
    if !(t >= 0.0) {
        return Err(Error::InvalidArgument(format!("semigroup time must be nonnegative, got {t}")));
    }
    if let Generator::Viscous { epsilon } = generator {
        if !(epsilon >= 0.0) {
            return Err(Error::InvalidArgument(format!("viscosity must be nonnegative, got {epsilon}")));
        }
    }
    f.check(basis)?;
    Ok(multiply(basis, f, |l| (-t * generator.symbol(l)).exp()))
}

/// `(1 - 2^{-2j} Δ_D)^{-1} f`.
pub fn resolvent_scaled(basis: &EigenBasis, j: i32, f: &SpectralField) -> Result<SpectralField> {
    f.check(basis)?;
    let eps = 2f64.powi(-2 * j);
    Ok(multiply(basis, f, |l| 1.0 / (1.0 + eps * l * l)))
}

/// `Λ_D^s f`; every real `s` is admissible since the spectrum starts at `j_{0,1}`.
pub fn lambda_power(basis: &EigenBasis, s: f64, f: &SpectralField) -> Result<SpectralField> {
    f.check(basis)?;
    Ok(multiply(basis, f, |l| l.powf(s)))
}
