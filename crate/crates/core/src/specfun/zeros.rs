use super::bessel::{bessel_j_upto, MAX_ORDER};
use crate::error::{Error, Result};

/// Largest supported zero index.
pub const MAX_ZERO_INDEX: usize = 512;

// Consecutive positive zeros of J_n are more than 3 apart for every n, so a
// half-unit scan cannot step over two of them.
const SCAN_STEP: f64 = 0.5;

/// The `k`-th positive zero `j_{order,k}` (`k >= 1`).
pub fn bessel_zero(order: u32, k: usize) -> Result<f64> {
    if k == 0 {
        return Err(Error::Domain("zero index k must be positive".into()));
    }
    Ok(*bessel_zeros(order, k)?.last().expect("k >= 1"))
}

/// The first `count` positive zeros of `J_order`, increasing.
pub fn bessel_zeros(order: u32, count: usize) -> Result<Vec<f64>> {
    if order > MAX_ORDER {
        return Err(Error::Domain(format!("order {order} exceeds {MAX_ORDER}")));
    }
    if count > MAX_ZERO_INDEX {
        return Err(Error::Domain(format!("zero index {count} exceeds {MAX_ZERO_INDEX}")));
    }
    let n = order as usize;
    let value = |x: f64| bessel_j_upto(n + 1, x)[n];

    // j_{n,1} > n, and J_n > 0 on (0, j_{n,1}).
    let mut lo = (order as f64).max(SCAN_STEP);
    let mut f_lo = value(lo);
    let mut zeros = Vec::with_capacity(count);
    while zeros.len() < count {
        let hi = lo + SCAN_STEP;
        if hi > super::MAX_ARGUMENT {
            return Err(Error::ZeroBracket { order, k: zeros.len() + 1 });
        }
        let f_hi = value(hi);
        if f_lo == 0.0 {
            zeros.push(lo);
        } else if f_lo.signum() != f_hi.signum() && f_hi != 0.0 {
            zeros.push(refine(order, zeros.len() + 1, lo, hi)?);
        }
        lo = hi;
        f_lo = f_hi;
    }
    Ok(zeros)
}

/// Safeguarded Newton on a sign-changing bracket.
fn refine(order: u32, k: usize, mut a: f64, mut b: f64) -> Result<f64> {
    let n = order as usize;
    let eval = |x: f64| {
        let j = bessel_j_upto(n + 1, x);
        let d = if n == 0 { -j[1] } else { j[n] * (n as f64) / x - j[n + 1] };
        (j[n], d)
    };
    let (fa, _) = eval(a);
    let (fb, _) = eval(b);
    if fa.signum() == fb.signum() {
        return Err(Error::ZeroBracket { order, k });
    }
    let sign_a = fa.signum();
    let mut x = 0.5 * (a + b);
    for _ in 0..200 {
        let (f, d) = eval(x);
        if f == 0.0 {
            return Ok(x);
        }
        if f.signum() == sign_a {
            a = x;
        } else {
            b = x;
        }
        let newton = x - f / d;
        let next = if d != 0.0 && newton > a && newton < b { newton } else { 0.5 * (a + b) };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x || (b - a) <= 4.0 * f64::EPSILON * x {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::ZeroConvergence { order, k })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_zeros() {
        assert!((bessel_zero(0, 1).unwrap() - 2.404_825_557_695_773).abs() < 1e-13);
        assert!((bessel_zero(1, 1).unwrap() - 3.831_705_970_207_512).abs() < 1e-13);
        assert!((bessel_zero(0, 2).unwrap() - 5.520_078_110_286_311).abs() < 1e-13);
    }

    #[test]
    fn large_order_and_index() {
        let z = bessel_zero(256, 3).unwrap();
        assert!(crate::specfun::bessel_j(256, z).unwrap().abs() < 1e-12);
        let zs = bessel_zeros(3, 512).unwrap();
        assert_eq!(zs.len(), 512);
        // McMahon: j_{m,k} ~ (k + m/2 - 1/4) pi for large k
        let beta = (512.0 + 1.5 - 0.25) * std::f64::consts::PI;
        assert!((zs[511] - beta).abs() < 0.01);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(bessel_zero(0, 0).is_err());
        assert!(bessel_zero(300, 1).is_err());
        assert!(bessel_zeros(0, 513).is_err());
    }

    #[test]
    fn bracket_without_sign_change_is_an_error() {
        assert!(matches!(refine(0, 1, 0.5, 1.0), Err(Error::ZeroBracket { .. })));
    }
}
