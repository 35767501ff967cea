use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{DiskGrid, DiskSpace, EigenBasis};

/// Everything a time integration needs besides the initial datum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub max_m: usize,
    pub max_k: usize,
    /// Time step.
    pub dt: f64,
    /// Final time `T`.
    pub horizon: f64,
    /// Viscosity `ε` in `Λ_D + ε(-Δ_D)`.
    pub epsilon: f64,
    /// Padding factor of the product grid.
    pub dealias: f64,
    /// Diagnostics are recorded every `cadence` steps (and at `T`).
    pub cadence: usize,
    /// Safety factor `c` of the advective guard `dt <= c / (λ_max |u|_max)`.
    pub cfl: f64,
    /// Abort once `‖θ‖_∞` exceeds this multiple of its initial value.
    pub blowup_factor: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_m: 24,
            max_k: 24,
            dt: 2e-3,
            horizon: 0.5,
            epsilon: 0.0,
            dealias: 1.5,
            cadence: 5,
            cfl: 0.5,
            blowup_factor: 10.0,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::Config(msg));
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return bad(format!("dt must be positive, got {}", self.dt));
        }
        if !(self.horizon >= self.dt && self.horizon.is_finite()) {
            return bad(format!("horizon {} must be at least dt = {}", self.horizon, self.dt));
        }
        if !(self.epsilon >= 0.0 && self.epsilon.is_finite()) {
            return bad(format!("epsilon must be nonnegative, got {}", self.epsilon));
        }
        if !(self.dealias >= 1.0) {
            return bad(format!("dealias factor must be at least 1, got {}", self.dealias));
        }
        if self.cadence == 0 {
            return bad("cadence must be at least 1".into());
        }
        if !(self.cfl > 0.0) || !(self.blowup_factor > 1.0) {
            return bad("cfl must be positive and blowup_factor above 1".into());
        }
        Ok(())
    }

    /// Number of steps; the last one is shortened to land on `T`.
    pub fn steps(&self) -> usize {
        ((self.horizon / self.dt) - 1e-9).ceil().max(1.0) as usize
    }

    pub fn space(&self) -> Result<DiskSpace> {
        self.validate()?;
        let basis = EigenBasis::new(self.max_m, self.max_k)?;
        let grid = DiskGrid::for_basis(&basis)?;
        DiskSpace::with_padding(basis, grid, self.dealias)
    }
}
