//! Time integration of critical SQG on the disk: the direct ETDRK2 solve,
//! the `ε`-viscous and frozen-drift linear problems, the Picard sequence and
//! the Duhamel residual.

mod config;
mod diagnostics;
mod integrator;
mod picard;
mod run;

pub use config::SolverConfig;
pub use diagnostics::Diagnostics;
pub use integrator::{etd_step, Advection, EtdWeights};
pub use picard::{picard_auto_horizon, picard_sequence, IterationState, PicardOutcome};
pub use run::{duhamel_residual, run_direct, run_regularized, Drive, RunOutput, Trajectory};
