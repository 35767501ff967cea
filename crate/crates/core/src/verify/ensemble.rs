use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{EigenBasis, SpectralField};

/// Seeded Gaussian ensemble: every coefficient is an independent complex
/// normal scaled by `λ^{-decay}`, one batch of `draws` fields per decay.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleSpec {
    pub seed: u64,
    pub draws: usize,
    /// Decay exponents of the coefficient profiles.
    pub profiles: Vec<f64>,
}

impl Default for EnsembleSpec {
    fn default() -> Self {
        Self { seed: 20240917, draws: 64, profiles: vec![0.0, 1.0, 2.0] }
    }
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        if self.draws == 0 || self.profiles.is_empty() {
            return Err(Error::Config("ensemble needs at least one draw and one profile".into()));
        }
        if self.profiles.iter().any(|p| !p.is_finite()) {
            return Err(Error::Config("ensemble profiles must be finite".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.draws * self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Draws every member on `basis`. Each member has its own ChaCha stream,
    /// so the fields do not depend on generation order.
    pub fn generate(&self, basis: &EigenBasis) -> Result<Vec<Member>> {
        self.validate()?;
        let mut out = Vec::with_capacity(self.len());
        for (p, &decay) in self.profiles.iter().enumerate() {
            for draw in 0..self.draws {
                let stream = (p * self.draws + draw) as u64;
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(stream);
                let primary = gaussian_field(basis, decay, &mut rng)?;
                let partner = gaussian_field(basis, decay, &mut rng)?;
                out.push(Member { decay, draw, primary, partner });
            }
        }
        Ok(out)
    }
}

fn gaussian_field(basis: &EigenBasis, decay: f64, rng: &mut ChaCha8Rng) -> Result<SpectralField> {
    let coeffs = basis
        .lambdas()
        .iter()
        .map(|l| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            Complex64::new(re, im) * l.powf(-decay)
        })
        .collect();
    let f = SpectralField::from_coeffs(basis.max_m(), basis.max_k(), coeffs)?;
    let n = f.l2_norm();
    Ok(f.scale(1.0 / n))
}

/// One ensemble draw: a primary field and an independent partner for the
/// bilinear checks, both of unit `L²` norm on the generating basis.
#[derive(Clone, Debug)]
pub struct Member {
    pub decay: f64,
    pub draw: usize,
    pub primary: SpectralField,
    pub partner: SpectralField,
}

impl Member {
    pub fn resized(&self, max_m: usize, max_k: usize) -> Self {
        Self { primary: self.primary.resized(max_m, max_k), partner: self.partner.resized(max_m, max_k), ..*self }
    }
}
