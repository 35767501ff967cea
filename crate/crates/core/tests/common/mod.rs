#![allow(dead_code)]

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sqg_disk::spectral::{DiskSpace, SpectralField};

/// Uniform random coefficients in the unit square, scaled by `λ^{-decay}`.
pub fn random_field(space: &DiskSpace, seed: u64, decay: f64) -> SpectralField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = space.basis();
    let coeffs = b
        .lambdas()
        .iter()
        .map(|l| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) * l.powf(-decay))
        .collect();
    SpectralField::from_coeffs(b.max_m(), b.max_k(), coeffs).unwrap()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

/// `J_n(x) = (1/π) ∫_0^π cos(nτ - x sin τ) dτ` by the trapezoid rule, which
/// converges geometrically for this periodic integrand. Independent of the
/// series and recurrence used by the crate.
pub fn oracle_j(n: u32, x: f64) -> f64 {
    let steps = 256;
    let h = std::f64::consts::PI / steps as f64;
    let f = |t: f64| (n as f64 * t - x * t.sin()).cos();
    let inner: f64 = (1..steps).map(|i| f(i as f64 * h)).sum();
    (inner + 0.5 * (f(0.0) + f(std::f64::consts::PI))) * h / std::f64::consts::PI
}

/// Plain bisection for a sign change of [`oracle_j`] in `[a, b]`.
pub fn oracle_zero(n: u32, mut a: f64, mut b: f64) -> f64 {
    let mut fa = oracle_j(n, a);
    assert!(fa * oracle_j(n, b) < 0.0, "no sign change in [{a}, {b}]");
    while b - a > 1e-15 * b {
        let c = 0.5 * (a + b);
        let fc = oracle_j(n, c);
        if fc == 0.0 {
            return c;
        }
        if fa * fc < 0.0 {
            b = c;
        } else {
            a = c;
            fa = fc;
        }
    }
    0.5 * (a + b)
}
