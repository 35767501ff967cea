use super::basis::EigenBasis;
use super::field::{GridField, SpectralField};
use super::grid::DiskGrid;
use super::point::evaluate_at;
use super::transform::Transform;
use crate::error::{Error, Result};

/// Dealiasing padding applied to quadratic products.
pub const DEALIAS_FACTOR: f64 = 1.5;
/// Refinement of the grid used for sup norms.
pub const FINE_FACTOR: f64 = 2.0;

/// A basis together with the three transforms every computation uses:
/// the collocation grid, the 3/2-padded product grid and the 2x-refined grid
/// on which `L^∞` norms are read off.
#[derive(Debug)]
pub struct DiskSpace {
    basis: EigenBasis,
    base: Transform,
    dealias: Transform,
    fine: Transform,
}

impl DiskSpace {
    pub fn new(max_m: usize, max_k: usize) -> Result<Self> {
        let basis = EigenBasis::new(max_m, max_k)?;
        let grid = DiskGrid::for_basis(&basis)?;
        Self::with_grid(basis, grid)
    }

    pub fn with_grid(basis: EigenBasis, grid: DiskGrid) -> Result<Self> {
        Self::with_padding(basis, grid, DEALIAS_FACTOR)
    }

    /// As [`DiskSpace::with_grid`] with a custom padding factor (at least 1)
    /// for the product grid.
    pub fn with_padding(basis: EigenBasis, grid: DiskGrid, padding: f64) -> Result<Self> {
        if !(padding >= 1.0) {
            return Err(Error::InvalidArgument(format!("padding factor must be at least 1, got {padding}")));
        }
        let base = Transform::new(&basis, &grid, 2)?;
        let dealias = Transform::new(&basis, &grid.scaled(padding)?, 2)?;
        let fine = Transform::new(&basis, &grid.scaled(FINE_FACTOR)?, 2)?;
        Ok(Self { basis, base, dealias, fine })
    }

    pub fn basis(&self) -> &EigenBasis {
        &self.basis
    }

    pub fn grid(&self) -> &DiskGrid {
        self.base.grid()
    }

    /// Transform on the collocation grid.
    pub fn base(&self) -> &Transform {
        &self.base
    }

    /// Transform on the padded grid used for products.
    pub fn dealias(&self) -> &Transform {
        &self.dealias
    }

    /// Transform on the refined grid used for sup norms.
    pub fn fine(&self) -> &Transform {
        &self.fine
    }

    pub fn zeros(&self) -> SpectralField {
        SpectralField::zeros(&self.basis)
    }

    pub fn synthesize(&self, f: &SpectralField) -> Result<GridField> {
        self.base.synthesize(f)
    }

    pub fn analyze(&self, f: &GridField) -> Result<SpectralField> {
        self.base.analyze(f)
    }

    /// Grid maximum of `|f|` on the refined grid.
    pub fn sup_norm(&self, f: &SpectralField) -> Result<f64> {
        Ok(self.fine.synthesize(f)?.max_abs())
    }

    /// Sup norm with the refined-grid maximiser polished by Newton steps on
    /// `∇f = 0`; never smaller than [`DiskSpace::sup_norm`].
    pub fn sup_norm_polished(&self, f: &SpectralField) -> Result<f64> {
        Ok(self.locate_extremum(f)?.value.abs())
    }

    /// Point where `|f|` is largest: refined-grid argmax followed by at most
    /// eight damped Newton steps. `value` carries the sign of `f` there.
    pub fn locate_extremum(&self, f: &SpectralField) -> Result<Extremum> {
        let grid_vals = self.fine.synthesize(f)?;
        let (i, l) = grid_vals.argmax_abs();
        let mut best = Extremum { point: self.fine.grid().point(i, l), value: grid_vals.at(i, l) };
        if best.value == 0.0 {
            return Ok(best);
        }
        let [mut x, mut y] = best.point;
        for _ in 0..8 {
            let pv = evaluate_at(&self.basis, f, x.hypot(y).min(1.0), y.atan2(x))?;
            if pv.value.abs() > best.value.abs() {
                best = Extremum { point: [x, y], value: pv.value };
            }
            let [fx, fy] = pv.grad;
            let [hxx, hxy, hyy] = pv.hess;
            let det = hxx * hyy - hxy * hxy;
            if det.abs() < 1e-300 {
                break;
            }
            let dx = (hyy * fx - hxy * fy) / det;
            let dy = (hxx * fy - hxy * fx) / det;
            let (nx, ny) = (x - dx, y - dy);
            if nx.hypot(ny) >= 1.0 || dx.hypot(dy) > 0.05 {
                break;
            }
            x = nx;
            y = ny;
            if dx.hypot(dy) < 1e-13 {
                let pv = evaluate_at(&self.basis, f, x.hypot(y), y.atan2(x))?;
                if pv.value.abs() > best.value.abs() {
                    best = Extremum { point: [x, y], value: pv.value };
                }
                break;
            }
        }
        Ok(best)
    }
}

/// Location and signed value of a maximum of `|f|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub point: [f64; 2],
    pub value: f64,
}
