use crate::error::{Error, Result};

/// Largest supported order.
pub const MAX_ORDER: u32 = 256;
/// Largest supported argument.
pub const MAX_ARGUMENT: f64 = 1.0e4;

const RESCALE_ABOVE: f64 = 1.0e250;
const RESCALE_BY: f64 = 1.0e-250;

fn check(order: u32, x: f64) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::Domain(format!("Bessel order {order} exceeds the supported maximum {MAX_ORDER}")));
    }
    if !x.is_finite() || x < 0.0 {
        return Err(Error::Domain(format!("Bessel argument must be a finite nonnegative number, got {x}")));
    }
    if x > MAX_ARGUMENT {
        return Err(Error::Domain(format!("Bessel argument {x} exceeds the supported maximum {MAX_ARGUMENT}")));
    }
    Ok(())
}

/// `J_order(x)` for `0 <= x <= 1e4` and `order <= 256`.
pub fn bessel_j(order: u32, x: f64) -> Result<f64> {
    check(order, x)?;
    Ok(j_unchecked(order, x))
}

/// `d/dx J_order(x)` from `J'_m = (J_{m-1} - J_{m+1}) / 2`, `J'_0 = -J_1`.
pub fn bessel_j_prime(order: u32, x: f64) -> Result<f64> {
    check(order, x)?;
    if order == 0 {
        return Ok(-j_unchecked(1, x));
    }
    let j = bessel_j_upto(order as usize + 1, x);
    let n = order as usize;
    Ok(0.5 * (j[n - 1] - j[n + 1]))
}

/// `J_0(x), ..., J_nmax(x)` in one sweep.
///
/// The argument is not range-checked; callers inside the crate only pass
/// values that come from the basis (`x = lambda * r`, `r <= 1`).
pub fn bessel_j_upto(nmax: usize, x: f64) -> Vec<f64> {
    if x == 0.0 {
        let mut out = vec![0.0; nmax + 1];
        out[0] = 1.0;
        return out;
    }
    if series_is_accurate(0, x) {
        return (0..=nmax).map(|n| series(n as u32, x)).collect();
    }
    miller(nmax, x)
}

pub(crate) fn j_unchecked(order: u32, x: f64) -> f64 {
    if x == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    if series_is_accurate(order, x) {
        series(order, x)
    } else {
        miller(order as usize, x)[order as usize]
    }
}

/// The ascending series is used while its terms decrease from the first one,
/// i.e. `(x/2)^2 <= order + 1`; past that point cancellation grows like `e^x`.
fn series_is_accurate(order: u32, x: f64) -> bool {
    0.25 * x * x <= f64::from(order) + 1.0
}

fn series(order: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut lead = 1.0;
    for i in 1..=order {
        lead *= half / f64::from(i);
        if lead == 0.0 {
            return 0.0;
        }
    }
    let q = half * half;
    let mut term = lead;
    let mut sum = lead;
    let mut k = 0.0_f64;
    loop {
        k += 1.0;
        term *= -q / (k * (k + f64::from(order)));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() || k > 500.0 {
            break;
        }
    }
    sum
}

/// Miller's backward recurrence normalised with `J_0 + 2 sum J_{2k} = 1`.
fn miller(nmax: usize, x: f64) -> Vec<f64> {
    let reach = (nmax as f64).max(x);
    let mut start = reach.ceil() as usize + 20 + (40.0 * reach).sqrt() as usize;
    if start % 2 == 1 {
        start += 1;
    }
    let mut out = vec![0.0; nmax + 1];
    let two_over_x = 2.0 / x;
    let mut above = 0.0; // J_{k+1}
    let mut here = 1.0e-30; // J_k, arbitrary seed at k = start
    let mut even_sum = 0.0;
    for k in (1..=start).rev() {
        let below = (k as f64) * two_over_x * here - above;
        above = here;
        here = below;
        let idx = k - 1;
        if here.abs() > RESCALE_ABOVE {
            here *= RESCALE_BY;
            above *= RESCALE_BY;
            even_sum *= RESCALE_BY;
            for v in out.iter_mut() {
                *v *= RESCALE_BY;
            }
        }
        if idx > 0 && idx % 2 == 0 {
            even_sum += here;
        }
        if idx <= nmax {
            out[idx] = here;
        }
    }
    let norm = 2.0 * even_sum + here;
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_j(1, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j(7, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j_prime(0, 0.0).unwrap(), 0.0);
        assert_eq!(bessel_j_prime(1, 0.0).unwrap(), 0.5);
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(bessel_j(0, -1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(257, 1.0), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(0, 2.0e4), Err(Error::Domain(_))));
        assert!(matches!(bessel_j(0, f64::NAN), Err(Error::Domain(_))));
        assert!(matches!(bessel_j_prime(3, -0.5), Err(Error::Domain(_))));
    }

    #[test]
    fn branches_agree_at_the_switch() {
        for order in [0u32, 1, 2, 5, 16, 64, 200] {
            let x = 2.0 * (f64::from(order) + 1.0).sqrt();
            for dx in [-1e-9, 0.0, 1e-9] {
                let xs = x + dx;
                let s = series(order, xs);
                let m = miller(order as usize, xs)[order as usize];
                assert!((s - m).abs() < 1e-13, "order {order}: series {s} miller {m}");
            }
        }
    }

    #[test]
    fn known_values() {
        // Abramowitz & Stegun table 9.1
        let cases = [
            (0u32, 1.0, 0.765_197_686_557_966_6),
            (1, 1.0, 0.440_050_585_744_933_5),
            (0, 10.0, -0.245_935_764_451_348_3),
            (1, 10.0, 0.043_472_746_168_861_44),
            (2, 5.0, 0.046_565_116_277_752_2),
            (10, 10.0, 0.207_486_106_633_358_9),
        ];
        for (n, x, want) in cases {
            let got = bessel_j(n, x).unwrap();
            assert!((got - want).abs() < 1e-14, "J_{n}({x}) = {got}, want {want}");
        }
    }

    #[test]
    fn upto_matches_single_order() {
        for x in [0.3, 1.9, 7.5, 55.0, 180.0] {
            let all = bessel_j_upto(40, x);
            for (n, v) in all.iter().enumerate() {
                let single = j_unchecked(n as u32, x);
                assert!((v - single).abs() < 1e-13, "n={n} x={x}");
            }
        }
    }
}
