//! Spectral solver and inequality-verification harness for the critical
//! surface quasi-geostrophic equation on the unit disk with Dirichlet
//! boundary conditions,
//!
//! ```text
//! ∂_t θ + (u · ∇) θ + Λ_D θ = 0,   u = ∇^⊥ Λ_D^{-1} θ,   ∇^⊥ = (-∂_{x_2}, ∂_{x_1}).
//! ```
//!
//! The crate is layered bottom-up: [`specfun`] (Bessel functions, zeros,
//! Gauss–Legendre), [`spectral`] (eigenbasis, transforms, functional
//! calculus), [`besov`] (Littlewood–Paley partitions and norms),
//! [`operators`] (gradients, advection, commutators, Green's kernel),
//! [`sqg`] (time integration, Picard and ε-viscosity constructions) and
//! [`verify`] (empirical-constant checks). [`cli`] drives it all.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod besov;
pub mod cli;
pub mod error;
pub mod io;
pub mod operators;
pub mod specfun;
pub mod spectral;
pub mod sqg;
pub mod verify;

pub use error::{Error, Result};
