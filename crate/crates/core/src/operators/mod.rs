//! Differential and integral operators on top of the spectral core.
//!
//! Throughout, `∇^⊥ = (-∂_y, ∂_x)` and the advection nonlinearity is
//! `B(f, g) = (∇^⊥ Λ_D^{-1} f · ∇) g`, projected back onto the basis from the
//! 3/2-padded grid.

mod commutator;
mod differential;
mod green;
mod trace;

pub use commutator::{commutator_block, remainder, resolvent_commutator};
pub use differential::{
    advect, gradient, hessian_of_inverse, perp_gradient, transport, transport_grid, velocity, Hessian, VectorGridField,
};
pub use green::green_kernel;
pub use trace::{boundary_trace, transport_trace};
