use num_complex::Complex64;

use super::basis::EigenBasis;
use super::field::SpectralField;
use crate::error::{Error, Result};
use crate::specfun::bessel_j_upto;

/// Value, gradient and Hessian of a field at one point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointValue {
    pub value: f64,
    /// `(∂_x f, ∂_y f)`
    pub grad: [f64; 2],
    /// `(∂_xx f, ∂_xy f, ∂_yy f)`
    pub hess: [f64; 3],
}

/// Evaluates the expansion and its first two derivatives at polar point
/// `(r, theta)`, `0 <= r <= 1`. The origin needs no special casing: the
/// shifted-order Bessel functions carry the limits.
pub fn evaluate_at(basis: &EigenBasis, f: &SpectralField, r: f64, theta: f64) -> Result<PointValue> {
    f.check(basis)?;
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!("radius {r} outside the closed disk")));
    }
    let signed = |js: &[f64], n: i64| {
        let v = js[n.unsigned_abs() as usize];
        if n < 0 && n % 2 != 0 {
            -v
        } else {
            v
        }
    };
    let phase = |n: i64| Complex64::from_polar(1.0, n as f64 * theta);
    let mut value = 0.0;
    let mut lap = 0.0;
    let mut d1 = Complex64::new(0.0, 0.0);
    let mut d2 = Complex64::new(0.0, 0.0);
    for m in 0..=basis.max_m() {
        let mi = m as i64;
        for k0 in 0..basis.max_k() {
            let c = f.coeffs()[basis.index(m, k0)];
            if c.norm_sqr() == 0.0 {
                continue;
            }
            let lam = basis.lambda(m, k0);
            let a = c * basis.norm_const(m, k0);
            let js = bessel_j_upto(m + 2, lam * r);
            let mult = if m == 0 { 1.0 } else { 2.0 };
            let v = (a * js[m] * phase(mi)).re * mult;
            value += v;
            lap -= lam * lam * v;
            let a1 = a * lam;
            d1 += -a1 * signed(&js, mi + 1) * phase(mi + 1);
            let a2 = a1 * lam;
            d2 += a2 * signed(&js, mi + 2) * phase(mi + 2);
            if m > 0 {
                d1 += a1.conj() * signed(&js, mi - 1) * phase(1 - mi);
                d2 += a2.conj() * signed(&js, mi - 2) * phase(2 - mi);
            }
        }
    }
    Ok(PointValue { value, grad: [d1.re, d1.im], hess: [0.5 * (lap + d2.re), 0.5 * d2.im, 0.5 * (lap - d2.re)] })
}
