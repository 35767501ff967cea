use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::basis::EigenBasis;
use super::field::{GridField, SpectralField};
use super::grid::DiskGrid;
use crate::error::{Error, Result};
use crate::specfun::bessel_j_upto;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Forward/backward transform between a basis and a grid.
///
/// Holds the table `J_{|m|+d}(j_{|m|,k} r_i)` (signed order) for shifts
/// `|d| <= max_shift`, which is what the complex derivative
/// `∂_+ = ∂_x + i ∂_y` needs: `∂_+ (J_m(λr) e^{imθ}) = -λ J_{m+1}(λr) e^{i(m+1)θ}`.
pub struct Transform {
    basis: EigenBasis,
    grid: DiskGrid,
    max_shift: usize,
    table: Vec<f64>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Transform {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Transform")
            .field("max_m", &self.basis.max_m())
            .field("max_k", &self.basis.max_k())
            .field("nr", &self.grid.nr())
            .field("ntheta", &self.grid.ntheta())
            .field("max_shift", &self.max_shift)
            .finish()
    }
}

impl Transform {
    pub fn new(basis: &EigenBasis, grid: &DiskGrid, max_shift: usize) -> Result<Self> {
        if max_shift > 2 {
            return Err(Error::InvalidArgument("derivative shifts above 2 are not tabulated".into()));
        }
        let m_out = basis.max_m() + max_shift;
        if grid.ntheta() < 2 * m_out + 1 {
            return Err(Error::SizeMismatch(format!(
                "ntheta = {} cannot represent angular orders up to {m_out}",
                grid.ntheta()
            )));
        }
        let nshift = 2 * max_shift + 1;
        let nr = grid.nr();
        let kk = basis.max_k();
        let mut table = vec![0.0; (basis.max_m() + 1) * nshift * kk * nr];
        for m in 0..=basis.max_m() {
            for k0 in 0..kk {
                let lam = basis.lambda(m, k0);
                for (i, &r) in grid.radii().iter().enumerate() {
                    let js = bessel_j_upto(m + max_shift, lam * r);
                    for s in 0..nshift {
                        let order = m as i64 + s as i64 - max_shift as i64;
                        let v = js[order.unsigned_abs() as usize];
                        let v = if order < 0 && order % 2 != 0 { -v } else { v };
                        table[((m * nshift + s) * kk + k0) * nr + i] = v;
                    }
                }
            }
        }
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(grid.ntheta());
        let inv = planner.plan_fft_inverse(grid.ntheta());
        Ok(Self { basis: basis.clone(), grid: grid.clone(), max_shift, table, fwd, inv })
    }

    pub fn basis(&self) -> &EigenBasis {
        &self.basis
    }

    pub fn grid(&self) -> &DiskGrid {
        &self.grid
    }

    #[inline]
    fn row(&self, m: usize, shift: i64, k0: usize) -> &[f64] {
        let nshift = 2 * self.max_shift + 1;
        let s = (shift + self.max_shift as i64) as usize;
        let nr = self.grid.nr();
        let start = ((m * nshift + s) * self.basis.max_k() + k0) * nr;
        &self.table[start..start + nr]
    }

    /// Angular spectrum of `∂_+^d f` on every ring, laid out `[slot][ring]`
    /// with slot `n mod ntheta`.
    fn plus_spectrum(&self, f: &SpectralField, d: usize) -> Vec<Complex64> {
        let nr = self.grid.nr();
        let nt = self.grid.ntheta();
        let di = d as i64;
        let mut spec = vec![ZERO; nt * nr];
        let sign = if d % 2 == 1 { -1.0 } else { 1.0 };
        let slot = |n: i64| n.rem_euclid(nt as i64) as usize;
        for m in 0..=self.basis.max_m() {
            for k0 in 0..self.basis.max_k() {
                let c = f.coeffs()[self.basis.index(m, k0)];
                if c == ZERO {
                    continue;
                }
                let a = c * self.basis.norm_const(m, k0) * self.basis.lambda(m, k0).powi(d as i32);
                // m >= 0: (-λ)^d J_{m+d} e^{i(m+d)θ}
                let pos = a * sign;
                let s = slot(m as i64 + di);
                let out = &mut spec[s * nr..(s + 1) * nr];
                for (o, t) in out.iter_mut().zip(self.row(m, di, k0)) {
                    *o += pos * t;
                }
                if m > 0 {
                    // -m: conj(c) λ^d J_{|m|-d} e^{i(d-|m|)θ}, signs folded in
                    let neg = a.conj();
                    let s = slot(di - m as i64);
                    let out = &mut spec[s * nr..(s + 1) * nr];
                    for (o, t) in out.iter_mut().zip(self.row(m, -di, k0)) {
                        *o += neg * t;
                    }
                }
            }
        }
        spec
    }

    fn spectrum_to_grid(&self, spec: &[Complex64]) -> Vec<Complex64> {
        let nr = self.grid.nr();
        let nt = self.grid.ntheta();
        let mut out = vec![ZERO; nr * nt];
        let mut scratch = vec![ZERO; self.inv.get_inplace_scratch_len()];
        for i in 0..nr {
            let ring = &mut out[i * nt..(i + 1) * nt];
            for (s, v) in ring.iter_mut().enumerate() {
                *v = spec[s * nr + i];
            }
            self.inv.process_with_scratch(ring, &mut scratch);
        }
        out
    }

    fn check(&self, f: &SpectralField) -> Result<()> {
        f.check(&self.basis)
    }

    /// Values of the eigen-expansion on the grid.
    pub fn synthesize(&self, f: &SpectralField) -> Result<GridField> {
        self.check(f)?;
        let vals = self.spectrum_to_grid(&self.plus_spectrum(f, 0));
        GridField::from_values(&self.grid, vals.into_iter().map(|z| z.re).collect())
    }

    /// `∂_+^d f` on the grid (complex), `d <= max_shift`.
    ///
    /// For real `f`: `∂_+ f = f_x + i f_y` and
    /// `∂_+^2 f = f_xx - f_yy + 2i f_xy`.
    pub fn synthesize_plus(&self, f: &SpectralField, d: usize) -> Result<Vec<Complex64>> {
        self.check(f)?;
        if d > self.max_shift {
            return Err(Error::InvalidArgument(format!(
                "derivative order {d} exceeds the tabulated shift {}",
                self.max_shift
            )));
        }
        Ok(self.spectrum_to_grid(&self.plus_spectrum(f, d)))
    }

    /// Projection of grid values onto the basis: angular DFT, then radial
    /// quadrature against each normalised mode.
    pub fn analyze(&self, f: &GridField) -> Result<SpectralField> {
        if !f.fits(&self.grid) {
            return Err(Error::SizeMismatch(format!(
                "grid field {}x{} does not fit grid {}x{}",
                f.nr(),
                f.ntheta(),
                self.grid.nr(),
                self.grid.ntheta()
            )));
        }
        let w = self
            .grid
            .radial_weights()
            .ok_or_else(|| Error::InvalidArgument("analysis needs a quadrature grid, got rings".into()))?;
        let nr = self.grid.nr();
        let nt = self.grid.ntheta();
        let mm = self.basis.max_m();
        // angular[m][i] = 2π w_i F_m(r_i)
        let mut angular = vec![ZERO; (mm + 1) * nr];
        let mut ring = vec![ZERO; nt];
        let mut scratch = vec![ZERO; self.fwd.get_inplace_scratch_len()];
        let scale = 2.0 * PI / nt as f64;
        for i in 0..nr {
            for (z, v) in ring.iter_mut().zip(f.ring(i)) {
                *z = Complex64::new(*v, 0.0);
            }
            self.fwd.process_with_scratch(&mut ring, &mut scratch);
            for m in 0..=mm {
                angular[m * nr + i] = ring[m] * (scale * w[i]);
            }
        }
        let mut out = SpectralField::zeros(&self.basis);
        for m in 0..=mm {
            let fm = &angular[m * nr..(m + 1) * nr];
            for k0 in 0..self.basis.max_k() {
                let t = self.row(m, 0, k0);
                let acc: Complex64 = fm.iter().zip(t).map(|(a, b)| a * b).sum();
                out.coeffs_mut()[self.basis.index(m, k0)] = acc * self.basis.norm_const(m, k0);
            }
        }
        for c in out.coeffs_mut().iter_mut().take(self.basis.max_k()) {
            c.im = 0.0;
        }
        Ok(out)
    }
}
