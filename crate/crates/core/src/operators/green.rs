use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Green's function of `-Δ_D` on the unit disk,
/// `G(x, y) = -(1/2π) log|x - y| + (1/2π) log(|x| |y - x/|x|²|)`.
///
/// The image term is evaluated as `log| |x| y - x/|x| |`, which is finite
/// at `x = 0` (where it vanishes). Both points may lie on the closed disk;
/// `G` is zero when either is on the boundary.
pub fn green_kernel(x: [f64; 2], y: [f64; 2]) -> Result<f64> {
    for p in [x, y] {
        if !(p[0].hypot(p[1]) <= 1.0) {
            return Err(Error::Domain(format!("point ({}, {}) outside the closed disk", p[0], p[1])));
        }
    }
    let d = (x[0] - y[0]).hypot(x[1] - y[1]);
    if d == 0.0 {
        return Err(Error::Domain("Green's function is singular on the diagonal".into()));
    }
    let rx = x[0].hypot(x[1]);
    let image = if rx == 0.0 { 1.0 } else { (rx * y[0] - x[0] / rx).hypot(rx * y[1] - x[1] / rx) };
    Ok((image.ln() - d.ln()) / (2.0 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_and_symmetry() {
        let y = [0.3, -0.4];
        let g0 = green_kernel([0.0, 0.0], y).unwrap();
        assert!((g0 + 0.5f64.ln() / (2.0 * PI)).abs() < 1e-15);
        let pts = [[0.1, 0.2], [-0.7, 0.05], [0.0, 0.93], [0.5, -0.5]];
        for a in pts {
            for b in pts {
                if a != b {
                    let ab = green_kernel(a, b).unwrap();
                    let ba = green_kernel(b, a).unwrap();
                    assert!((ab - ba).abs() < 1e-12);
                    assert!(ab > 0.0);
                }
            }
        }
    }

    #[test]
    fn vanishes_on_the_boundary() {
        let x = [0.2, 0.35];
        for t in [0.0f64, 1.0, 2.5, 4.0] {
            let y = [t.cos(), t.sin()];
            assert!(green_kernel(x, y).unwrap().abs() < 1e-14);
            let near = [(1.0 - 1e-6) * t.cos(), (1.0 - 1e-6) * t.sin()];
            assert!(green_kernel(x, near).unwrap().abs() < 1e-5);
        }
    }

    #[test]
    fn tangential_derivative_vanishes_at_boundary_point() {
        let y = [0.3, -0.2];
        let h = 1e-6;
        // x moves along the tangent at (0, 1); to first order it stays on the circle
        let at = |s: f64| green_kernel([s.sin(), s.cos()], y).unwrap();
        assert!(((at(h) - at(-h)) / (2.0 * h)).abs() < 1e-9);
    }

    #[test]
    fn errors() {
        assert!(green_kernel([0.1, 0.1], [0.1, 0.1]).is_err());
        assert!(green_kernel([1.1, 0.0], [0.1, 0.1]).is_err());
    }
}
