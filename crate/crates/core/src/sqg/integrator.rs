use crate::error::Result;
use crate::operators::advect;
use crate::spectral::{multiply, DiskSpace, SpectralField};

/// What advects the scalar during a step.
#[derive(Clone, Copy, Debug)]
pub enum Advection<'a> {
    /// Pure dissipation.
    None,
    /// `(∇^⊥Λ_D^{-1}θ · ∇)θ`, the full equation.
    SelfAdvect,
    /// Frozen drift, given at the start and end of the step.
    Frozen { start: &'a SpectralField, end: &'a SpectralField },
}

/// Per-mode ETDRK2 weights for generator symbol `L` and step `h`:
/// `e^{-hL}`, `(1 - e^{-hL})/L` and `(e^{-hL} - 1 + hL)/(hL²)`.
#[derive(Clone, Debug)]
pub struct EtdWeights {
    pub(crate) decay: Vec<f64>,
    pub(crate) phi1: Vec<f64>,
    pub(crate) phi2: Vec<f64>,
}

impl EtdWeights {
    pub fn new(lambdas: &[f64], h: f64, epsilon: f64) -> Self {
        let mut decay = Vec::with_capacity(lambdas.len());
        let mut phi1 = Vec::with_capacity(lambdas.len());
        let mut phi2 = Vec::with_capacity(lambdas.len());
        for &l in lambdas {
            let gen = l + epsilon * l * l;
            let z = h * gen;
            decay.push((-z).exp());
            let (a, b) = phi_functions(z);
            phi1.push(h * a);
            phi2.push(h * b);
        }
        Self { decay, phi1, phi2 }
    }
}

/// `((1 - e^{-z})/z, (e^{-z} - 1 + z)/z²)`, by series near zero.
fn phi_functions(z: f64) -> (f64, f64) {
    if z < 0.1 {
        // Σ (-z)^n/(n+1)! and Σ (-z)^n/(n+2)!
        let (mut a, mut b) = (0.0, 0.0);
        let mut term = 1.0;
        for n in 0..14 {
            let nf = n as f64;
            a += term / (nf + 1.0);
            b += term / ((nf + 1.0) * (nf + 2.0));
            term *= -z / (nf + 1.0);
        }
        (a, b)
    } else {
        let em1 = (-z).exp_m1();
        (-em1 / z, (em1 + z) / (z * z))
    }
}

fn scaled(f: &SpectralField, w: &[f64]) -> SpectralField {
    f.map_indexed(|i, c| c * w[i])
}

/// One ETDRK2 (Cox–Matthews) step for
/// `∂_t θ + (Λ_D + εΛ_D²)θ = -B(a, θ)`:
///
/// ```text
/// p      = e^{-hL} θ + φ_1 N(θ)
/// θ_next = p + φ_2 (N(p) - N(θ))
/// ```
pub fn etd_step(
    space: &DiskSpace,
    weights: &EtdWeights,
    theta: &SpectralField,
    advection: Advection<'_>,
) -> Result<SpectralField> {
    let decayed = scaled(theta, &weights.decay);
    let (start, end) = match advection {
        Advection::None => return Ok(decayed),
        Advection::SelfAdvect => (None, None),
        Advection::Frozen { start, end } => (Some(start), Some(end)),
    };
    // N(u) = -B(a, u)
    let n0 = -&advect(space, start.unwrap_or(theta), theta)?;
    let predictor = &decayed + &scaled(&n0, &weights.phi1);
    let n1 = -&advect(space, end.unwrap_or(&predictor), &predictor)?;
    Ok(&predictor + &scaled(&(&n1 - &n0), &weights.phi2))
}

/// `e^{-t(Λ_D + εΛ_D²)} f`.
pub(crate) fn propagate(space: &DiskSpace, f: &SpectralField, t: f64, epsilon: f64) -> SpectralField {
    multiply(space.basis(), f, |l| (-t * (l + epsilon * l * l)).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_series_matches_closed_form() {
        for z in [0.02, 0.05, 0.099, 0.1, 0.2] {
            let (a, b) = phi_functions(z);
            let em1 = (-z).exp_m1();
            assert!((a + em1 / z).abs() < 1e-13);
            assert!((b - (em1 + z) / (z * z)).abs() < 1e-9 / z);
        }
        let (a, b) = phi_functions(0.0);
        assert_eq!((a, b), (1.0, 0.5));
    }
}
