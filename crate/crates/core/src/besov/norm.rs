use serde::{Deserialize, Serialize};

use super::partition::{JRange, Partition, PartitionKind};
use crate::error::{Error, Result};
use crate::spectral::{DiskSpace, EigenBasis, SpectralField};

/// Exponents of `Ḃ^s_{p,q}`; `p` and `q` may be `f64::INFINITY`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BesovSpec {
    pub s: f64,
    #[serde(with = "exponent")]
    pub p: f64,
    #[serde(with = "exponent")]
    pub q: f64,
}

impl BesovSpec {
    pub fn new(s: f64, p: f64, q: f64) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::InvalidArgument(format!("regularity must be finite, got {s}")));
        }
        for (name, v) in [("p", p), ("q", q)] {
            if !(v >= 1.0) {
                return Err(Error::InvalidArgument(format!("{name} must lie in [1, ∞], got {v}")));
            }
        }
        Ok(Self { s, p, q })
    }

    /// `Ḃ^s_{∞,1}`, the scale the solver works in.
    pub fn sup_summable(s: f64) -> Self {
        Self { s, p: f64::INFINITY, q: 1.0 }
    }
}

/// Outcome of one norm evaluation. `tail_bound` is the largest mass of the
/// partition of unity missing on the spectrum because of the finite block
/// range.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NormReport {
    pub s: f64,
    #[serde(with = "exponent")]
    pub p: f64,
    #[serde(with = "exponent")]
    pub q: f64,
    pub partition: PartitionKind,
    pub value: f64,
    pub tail_bound: f64,
    pub j_range: JRange,
}

/// `‖w_j(Λ_D) f‖_{L^p}` for every block of the partition. `p = 2` is exact
/// by Parseval; `p = ∞` is the maximum over the refined grid; other `p` use
/// quadrature on the refined grid.
pub fn block_norms(space: &DiskSpace, f: &SpectralField, p: f64, partition: &Partition) -> Result<Vec<(i32, f64)>> {
    f.check(space.basis())?;
    if !(p >= 1.0) {
        return Err(Error::InvalidArgument(format!("p must lie in [1, ∞], got {p}")));
    }
    partition
        .range()
        .iter()
        .map(|j| {
            let block = partition.block(space.basis(), j, f);
            Ok((j, lp_norm(space, &block, p)?))
        })
        .collect()
}

fn lp_norm(space: &DiskSpace, f: &SpectralField, p: f64) -> Result<f64> {
    if p == 2.0 {
        Ok(f.l2_norm())
    } else if p.is_infinite() {
        space.sup_norm(f)
    } else {
        let fine = space.fine();
        fine.synthesize(f)?.lp_norm(fine.grid(), p)
    }
}

pub fn besov_norm(space: &DiskSpace, f: &SpectralField, spec: BesovSpec, partition: &Partition) -> Result<NormReport> {
    if partition.range().is_empty() {
        return Err(Error::InvalidArgument("empty block range".into()));
    }
    if partition.kind() == PartitionKind::Resolvent && spec.s.abs() >= 2.0 {
        return Err(Error::InvalidArgument(format!("resolvent blocks only characterise |s| < 2, got s = {}", spec.s)));
    }
    let blocks = block_norms(space, f, spec.p, partition)?;
    let weighted = blocks.iter().map(|&(j, n)| 2f64.powf(spec.s * j as f64) * n);
    let value = if spec.q.is_infinite() {
        weighted.fold(0.0, f64::max)
    } else {
        weighted.map(|v| v.powf(spec.q)).sum::<f64>().powf(1.0 / spec.q)
    };
    Ok(NormReport {
        s: spec.s,
        p: spec.p,
        q: spec.q,
        partition: partition.kind(),
        value,
        tail_bound: partition.tail_bound(space.basis()),
        j_range: partition.range(),
    })
}

/// `‖f‖_{H^s} = ‖f‖_{Ḃ^s_{2,2}}` with dyadic blocks.
pub fn sobolev_norm(space: &DiskSpace, f: &SpectralField, s: f64) -> Result<f64> {
    let spec = BesovSpec { s, p: 2.0, q: 2.0 };
    Ok(besov_norm(space, f, spec, &Partition::dyadic(space.basis()))?.value)
}

/// `‖Λ_D^s f‖_{L²}` straight from the coefficients.
pub fn spectral_sobolev_norm(basis: &EigenBasis, f: &SpectralField, s: f64) -> f64 {
    let lam = basis.lambdas();
    f.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| f.multiplicity(i) * lam[i].powf(2.0 * s) * c.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// JSON has no infinity; exponents serialise `∞` as the string `"inf"`.
mod exponent {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*v)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Num(f64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(v),
            Raw::Text(t) if matches!(t.as_str(), "inf" | "infinity" | "∞") => Ok(f64::INFINITY),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("bad exponent {t:?}"))),
        }
    }
}
