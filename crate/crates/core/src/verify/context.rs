use serde::{Deserialize, Serialize};

use super::ensemble::{EnsembleSpec, Member};
use crate::error::{Error, Result};
use crate::spectral::DiskSpace;
use crate::sqg::SolverConfig;

/// Basis truncation `(max_m, max_k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Resolution {
    pub max_m: usize,
    pub max_k: usize,
}

impl Resolution {
    pub fn space(&self) -> Result<DiskSpace> {
        DiskSpace::new(self.max_m, self.max_k)
    }
}

/// Settings of the Picard and `ε`-sweep check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PicardSettings {
    pub iterations: usize,
    /// Required bound on `D_{n+1}/D_n` for `n >= 3`.
    pub target: f64,
    /// Sup norm of the small datum.
    pub amplitude: f64,
    /// Spectral cutoff of the small datum.
    pub band: f64,
    /// Limit versus direct solve, `L²` at `T`.
    pub limit_tolerance: f64,
    pub epsilons: Vec<f64>,
    /// Decay profile of the `ε`-sweep datum (taken from the ensemble).
    pub sweep_profile: f64,
    /// Sup norm of the `ε`-sweep datum.
    pub sweep_amplitude: f64,
    pub slope_target: f64,
    pub slope_tolerance: f64,
}

impl Default for PicardSettings {
    fn default() -> Self {
        Self {
            iterations: 6,
            target: 0.6,
            amplitude: 1e-2,
            band: 8.0,
            limit_tolerance: 1e-4,
            epsilons: vec![1e-2, 5e-3, 2.5e-3, 1.25e-3],
            sweep_profile: 0.0,
            sweep_amplitude: 1.0,
            slope_target: 0.5,
            slope_tolerance: 0.15,
        }
    }
}

/// Settings of the linear-flow check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegularitySettings {
    /// Final time of the sampled flow.
    pub horizon: f64,
    /// First positive sample time; the rest are geometric up to `horizon`.
    pub first_time: f64,
    pub samples: usize,
}

impl Default for RegularitySettings {
    fn default() -> Self {
        Self { horizon: 8.0, first_time: 1e-3, samples: 36 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerifyConfig {
    pub ensemble: EnsembleSpec,
    pub coarse: Resolution,
    pub fine: Resolution,
    /// Largest tolerated ratio between the two resolutions' constants.
    pub drift_limit: f64,
    /// Members used for the identity spot checks (remainder, rotation).
    pub spot_members: usize,
    pub solver: SolverConfig,
    pub picard: PicardSettings,
    pub regularity: RegularitySettings,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            ensemble: EnsembleSpec::default(),
            coarse: Resolution { max_m: 24, max_k: 24 },
            fine: Resolution { max_m: 32, max_k: 32 },
            drift_limit: 1.5,
            spot_members: 4,
            solver: SolverConfig::default(),
            picard: PicardSettings::default(),
            regularity: RegularitySettings::default(),
        }
    }
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<()> {
        self.ensemble.validate()?;
        if self.fine.max_m < self.coarse.max_m || self.fine.max_k < self.coarse.max_k {
            return Err(Error::Config("fine resolution must contain the coarse one".into()));
        }
        if self.coarse.max_m == 0 || self.coarse.max_k < 2 {
            return Err(Error::Config("coarse resolution needs max_m >= 1 and max_k >= 2".into()));
        }
        if !(self.drift_limit >= 1.0) {
            return Err(Error::Config(format!("drift_limit must be at least 1, got {}", self.drift_limit)));
        }
        self.solver.validate()?;
        let p = &self.picard;
        if p.iterations < 4 || p.epsilons.len() < 2 || p.epsilons.iter().any(|e| !(*e > 0.0)) {
            return Err(Error::Config("picard needs >= 4 iterations and >= 2 positive epsilons".into()));
        }
        if !self.ensemble.profiles.contains(&p.sweep_profile) {
            return Err(Error::Config(format!("sweep_profile {} is not an ensemble profile", p.sweep_profile)));
        }
        let r = &self.regularity;
        if !(r.first_time > 0.0 && r.horizon > r.first_time) || r.samples < 2 {
            return Err(Error::Config("regularity needs 0 < first_time < horizon and >= 2 samples".into()));
        }
        Ok(())
    }
}

/// One resolution: its space and the ensemble restricted to its basis.
#[derive(Debug)]
pub struct Level {
    pub resolution: Resolution,
    pub space: DiskSpace,
    pub members: Vec<Member>,
}

/// Everything the checks share. The ensemble is drawn on the fine basis and
/// truncated for the coarse one, so both levels see the same random data.
#[derive(Debug)]
pub struct Context {
    pub config: VerifyConfig,
    pub coarse: Level,
    pub fine: Level,
}

impl Context {
    pub fn new(config: VerifyConfig) -> Result<Self> {
        config.validate()?;
        let fine_space = config.fine.space()?;
        let members = config.ensemble.generate(fine_space.basis())?;
        let Resolution { max_m, max_k } = config.coarse;
        let coarse_members = members.iter().map(|m| m.resized(max_m, max_k)).collect();
        Ok(Self {
            coarse: Level { resolution: config.coarse, space: config.coarse.space()?, members: coarse_members },
            fine: Level { resolution: config.fine, space: fine_space, members },
            config,
        })
    }

    pub fn levels(&self) -> [&Level; 2] {
        [&self.coarse, &self.fine]
    }

    /// Solver settings with the basis of `level`.
    pub fn solver_for(&self, level: &Level) -> SolverConfig {
        SolverConfig { max_m: level.resolution.max_m, max_k: level.resolution.max_k, ..self.config.solver.clone() }
    }
}
