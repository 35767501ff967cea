//! The Dirichlet-Laplacian eigenbasis of the unit disk and the functional
//! calculus built on it.
//!
//! Modes are `e_{m,k}(r, θ) = N_{m,k} J_{|m|}(j_{|m|,k} r) e^{imθ}` with unit
//! L² norm; `Λ_D e_{m,k} = j_{|m|,k} e_{m,k}`. Real fields are stored by their
//! `m >= 0` coefficients only, `c(-m, k) = conj(c(m, k))`.

mod basis;
mod calculus;
mod field;
mod grid;
mod point;
mod space;
mod transform;

pub use basis::{EigenBasis, EigenMode, MAX_BASIS_K, MAX_BASIS_M};
pub(crate) use calculus::multiply;
pub use calculus::{apply_multiplier, lambda_power, resolvent_scaled, semigroup, Generator};
pub use field::{GridField, SpectralField};
pub use grid::DiskGrid;
pub use point::{evaluate_at, PointValue};
pub use space::{DiskSpace, Extremum};
pub use transform::Transform;
