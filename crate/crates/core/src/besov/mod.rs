//! Littlewood–Paley machinery for `Λ_D`: the smooth dyadic partition
//! `{φ_j}`, the resolvent partition `{ψ_j}`, low-pass operators and
//! Besov/Sobolev norms.

mod norm;
mod partition;

pub use norm::{besov_norm, block_norms, sobolev_norm, spectral_sobolev_norm, BesovSpec, NormReport};
pub use partition::{eta, low_pass, low_pass_weight, phi0, psi, JRange, Partition, PartitionKind};
