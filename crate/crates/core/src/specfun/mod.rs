//! Special functions and quadrature used by the spectral core.
//!
//! Everything here is a pure function of its arguments. Bessel functions of
//! the first kind are evaluated with the ascending series near the origin and
//! Miller's backward recurrence elsewhere; zeros are bracketed by scanning for
//! sign changes and polished with a safeguarded Newton iteration.

mod bessel;
mod quadrature;
mod zeros;

pub use bessel::{bessel_j, bessel_j_prime, bessel_j_upto, MAX_ARGUMENT, MAX_ORDER};
pub use quadrature::{gauss_legendre, QuadratureRule};
pub use zeros::{bessel_zero, bessel_zeros, MAX_ZERO_INDEX};
