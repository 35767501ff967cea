use serde::{Deserialize, Serialize};

use crate::spectral::{EigenBasis, SpectralField};

/// Smooth step: 1 on `(-∞, 1]`, 0 on `[2, ∞)`.
pub fn eta(x: f64) -> f64 {
    fn g(t: f64) -> f64 {
        if t > 0.0 {
            (-1.0 / t).exp()
        } else {
            0.0
        }
    }
    if x <= 1.0 {
        return 1.0;
    }
    if x >= 2.0 {
        return 0.0;
    }
    let a = g(2.0 - x);
    a / (a + g(x - 1.0))
}

/// Dyadic bump `φ_0(λ) = η(λ) - η(2λ)`, supported in `[1/2, 2]`.
pub fn phi0(x: f64) -> f64 {
    eta(x) - eta(2.0 * x)
}

/// Resolvent block `ψ_j(λ) = 1/(1 + 2^{-2j-2}λ²) - 1/(1 + 2^{-2j}λ²)`,
/// evaluated in the cancellation-free product form.
pub fn psi(j: i32, lambda: f64) -> f64 {
    let a = (lambda * 2f64.powi(-j)).powi(2);
    0.75 * a / ((1.0 + 0.25 * a) * (1.0 + a))
}

/// Symbol of `S_j = Σ_{k≤j} φ_k(Λ_D)`; the sum telescopes to `η(λ/2^j)`.
pub fn low_pass_weight(j: i32, lambda: f64) -> f64 {
    eta(lambda * 2f64.powi(-j))
}

/// `S_j f`.
pub fn low_pass(basis: &EigenBasis, j: i32, f: &SpectralField) -> SpectralField {
    crate::spectral::multiply(basis, f, |l| low_pass_weight(j, l))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionKind {
    Dyadic,
    Resolvent,
}

impl std::fmt::Display for PartitionKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PartitionKind::Dyadic => "dyadic",
            PartitionKind::Resolvent => "resolvent",
        })
    }
}

/// Inclusive range of block indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JRange {
    pub lo: i32,
    pub hi: i32,
}

impl JRange {
    pub fn iter(&self) -> impl Iterator<Item = i32> {
        self.lo..=self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1).max(0) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }
}

/// Margin of the resolvent range beyond the spectrum, in octaves. Each side
/// contributes at most `2^{-2·margin}` of missing mass.
const RESOLVENT_MARGIN: i32 = 17;

/// A partition of unity truncated to the blocks that matter for one basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Partition {
    kind: PartitionKind,
    range: JRange,
}

impl Partition {
    pub fn new(kind: PartitionKind, basis: &EigenBasis) -> Self {
        let lo = basis.lambda_min().log2().floor() as i32;
        let hi = basis.lambda_max().log2().ceil() as i32;
        let range = match kind {
            PartitionKind::Dyadic => JRange { lo: lo - 1, hi },
            PartitionKind::Resolvent => JRange { lo: lo - RESOLVENT_MARGIN, hi: hi + RESOLVENT_MARGIN },
        };
        Self { kind, range }
    }

    pub fn dyadic(basis: &EigenBasis) -> Self {
        Self::new(PartitionKind::Dyadic, basis)
    }

    pub fn resolvent(basis: &EigenBasis) -> Self {
        Self::new(PartitionKind::Resolvent, basis)
    }

    /// Same kind with an explicit block range.
    pub fn with_range(kind: PartitionKind, range: JRange) -> Self {
        Self { kind, range }
    }

    pub fn kind(&self) -> PartitionKind {
        self.kind
    }

    pub fn range(&self) -> JRange {
        self.range
    }

    pub fn weight(&self, j: i32, lambda: f64) -> f64 {
        match self.kind {
            PartitionKind::Dyadic => phi0(lambda * 2f64.powi(-j)),
            PartitionKind::Resolvent => psi(j, lambda),
        }
    }

    /// `1 - Σ_{j in range} w_j(λ)`. For the resolvent family this is
    /// computed from the telescoped closed form, not by summing.
    pub fn missing_mass(&self, lambda: f64) -> f64 {
        match self.kind {
            PartitionKind::Dyadic => {
                let s: f64 = self.range.iter().map(|j| self.weight(j, lambda)).sum();
                1.0 - s
            }
            PartitionKind::Resolvent => {
                let res = |j: i32| 1.0 / (1.0 + (lambda * 2f64.powi(-j)).powi(2));
                // 1 - (res(hi + 1) - res(lo))
                let top = {
                    let a = (lambda * 2f64.powi(-(self.range.hi + 1))).powi(2);
                    a / (1.0 + a)
                };
                top + res(self.range.lo)
            }
        }
    }

    /// Largest missing mass over the spectrum of `basis`.
    pub fn tail_bound(&self, basis: &EigenBasis) -> f64 {
        basis.lambdas().iter().map(|&l| self.missing_mass(l).abs()).fold(0.0, f64::max)
    }

    /// `w_j(Λ_D) f`.
    pub fn block(&self, basis: &EigenBasis, j: i32, f: &SpectralField) -> SpectralField {
        crate::spectral::multiply(basis, f, |l| self.weight(j, l))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi0_examples() {
        assert_eq!(phi0(1.0), 1.0);
        assert_eq!(phi0(0.4), 0.0);
        assert_eq!(phi0(2.1), 0.0);
        assert_eq!(phi0(0.5), 0.0);
        assert_eq!(phi0(2.0), 0.0);
        let s: f64 = (-10..=10).map(|j| phi0(3.7 * 2f64.powi(-j))).sum();
        assert!((s - 1.0).abs() < 1e-14);
        for i in 0..1000 {
            assert!(phi0(i as f64 * 0.003) >= 0.0);
        }
    }

    #[test]
    fn psi_examples() {
        assert!((psi(0, 1.0) - 0.3).abs() < 1e-15);
        let direct =
            |j: i32, l: f64| 1.0 / (1.0 + 2f64.powi(-2 * j - 2) * l * l) - 1.0 / (1.0 + 2f64.powi(-2 * j) * l * l);
        for j in -5..5 {
            for l in [0.3, 2.4, 17.0, 110.0] {
                assert!((psi(j, l) - direct(j, l)).abs() < 1e-14);
                assert!(psi(j, l) > 0.0);
            }
            assert!((psi(j, 1.7 * 2f64.powi(j)) - psi(0, 1.7)).abs() < 1e-15);
        }
        let sum: f64 = (-20..=20).map(|j| psi(j, 5.0)).sum();
        let p = Partition::with_range(PartitionKind::Resolvent, JRange { lo: -20, hi: 20 });
        assert!((1.0 - sum - p.missing_mass(5.0)).abs() < 1e-15);
    }

    #[test]
    fn low_pass_weight_is_partial_sum() {
        for j in -2..8 {
            for l in [2.5, 3.9, 7.0, 31.0, 100.0] {
                let s: f64 = (j - 40..=j).map(|k| phi0(l * 2f64.powi(-k))).sum();
                assert!((s - low_pass_weight(j, l)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn ranges_cover_the_spectrum() {
        let b = EigenBasis::new(32, 32).unwrap();
        let d = Partition::dyadic(&b);
        assert!(d.tail_bound(&b) < 1e-12);
        let r = Partition::resolvent(&b);
        assert!(r.tail_bound(&b) <= 1e-10);
        assert!(!d.range().is_empty() && d.range().len() < r.range().len());
    }
}
