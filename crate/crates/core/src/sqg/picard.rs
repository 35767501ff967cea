use serde::Serialize;

use super::config::SolverConfig;
use super::run::{integrate, sup_besov, Drive, Trajectory};
use crate::besov::low_pass;
use crate::error::{Error, Result};
use crate::spectral::{DiskSpace, SpectralField};

/// One Picard iterate `θ_n` and its distance `D_n` to `θ_{n-1}` in
/// `L^∞(0,T; Ḃ^0_{∞,1}) ∩ L^1(0,T; Ḃ^1_{∞,1})`; `D_1` is `None`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterationState {
    pub n: usize,
    pub distance: Option<f64>,
    /// `‖θ_n‖_{L^1(0,T; Ḃ^1_{∞,1})}`
    pub besov1_integral: f64,
}

#[derive(Clone, Debug)]
pub struct PicardOutcome {
    pub horizon: f64,
    pub iterations: Vec<IterationState>,
    /// `θ_N` on the whole time grid.
    pub last: Trajectory,
}

impl PicardOutcome {
    /// `D_{n+1}/D_n` for every `n` where both exist, paired with `n`.
    pub fn ratios(&self) -> Vec<(usize, f64)> {
        self.iterations
            .windows(2)
            .filter_map(|w| match (w[0].distance, w[1].distance) {
                (Some(a), Some(b)) => Some((w[0].n, if a > 0.0 { b / a } else { 0.0 })),
                _ => None,
            })
            .collect()
    }

    /// Whether `D_{n+1}/D_n <= target` for all `n >= from`.
    pub fn contracts(&self, target: f64, from: usize) -> bool {
        let r = self.ratios();
        r.iter().any(|&(n, _)| n >= from) && r.iter().filter(|&&(n, _)| n >= from).all(|&(_, q)| q <= target)
    }
}

/// Sampled `max_t ‖a - b‖_{Ḃ^0_{∞,1}} + ∫ ‖a - b‖_{Ḃ^1_{∞,1}}` (trapezoid) and
/// `∫ ‖a‖_{Ḃ^1_{∞,1}}`, every `cadence` steps.
fn mixed_norms(space: &DiskSpace, a: &Trajectory, b: Option<&Trajectory>, cadence: usize) -> Result<(f64, f64)> {
    let n = a.len();
    let mut idx: Vec<usize> = (0..n).step_by(cadence).collect();
    if idx.last() != Some(&(n - 1)) {
        idx.push(n - 1);
    }
    let (mut sup0, mut int_diff, mut int_a) = (0.0f64, 0.0, 0.0);
    let mut prev: Option<(f64, f64, f64)> = None;
    for &i in &idx {
        let t = a.times()[i];
        let ba = sup_besov(space, &a.states()[i], &[1.0])?[0];
        let (d0, d1) = match b {
            Some(b) => {
                let v = sup_besov(space, &(&a.states()[i] - &b.states()[i]), &[0.0, 1.0])?;
                (v[0], v[1])
            }
            None => (0.0, 0.0),
        };
        sup0 = sup0.max(d0);
        if let Some((tp, d1p, bap)) = prev {
            int_diff += 0.5 * (t - tp) * (d1p + d1);
            int_a += 0.5 * (t - tp) * (bap + ba);
        }
        prev = Some((t, d1, ba));
    }
    Ok((sup0 + int_diff, int_a))
}

/// `θ_1 = e^{-tL} S_1θ_0`; for `n >= 2`, `θ_n` solves the linear problem with
/// drift `θ_{n-1}` and datum `S_nθ_0`, `S_n = Σ_{j<=n} φ_j(Λ_D)`.
pub fn picard_sequence(
    space: &DiskSpace,
    theta0: &SpectralField,
    config: &SolverConfig,
    iterations: usize,
) -> Result<PicardOutcome> {
    if iterations < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 iterations, got {iterations}")));
    }
    let basis = space.basis();
    let first = integrate(space, &low_pass(basis, 1, theta0), config, Drive::Linear, false)?.trajectory;
    let (_, int1) = mixed_norms(space, &first, None, config.cadence)?;
    let mut states = vec![IterationState { n: 1, distance: None, besov1_integral: int1 }];
    let mut prev = first;
    for n in 2..=iterations {
        let datum = low_pass(basis, n as i32, theta0);
        let next = integrate(space, &datum, config, Drive::Frozen(&prev), false)?.trajectory;
        let (d, int_n) = mixed_norms(space, &next, Some(&prev), config.cadence)?;
        states.push(IterationState { n, distance: Some(d), besov1_integral: int_n });
        prev = next;
    }
    Ok(PicardOutcome { horizon: config.horizon, iterations: states, last: prev })
}

/// Tries `T, T/2, T/4, T/8` and returns the first horizon at which
/// `D_{n+1}/D_n <= target` for all `n >= 3`, or the last attempt if none
/// qualifies. The second component lists every attempt.
pub fn picard_auto_horizon(
    space: &DiskSpace,
    theta0: &SpectralField,
    config: &SolverConfig,
    iterations: usize,
    target: f64,
) -> Result<(PicardOutcome, Vec<(f64, bool)>)> {
    let mut attempts = Vec::new();
    let mut last = None;
    for halvings in 0..4 {
        let horizon = config.horizon / f64::from(1u32 << halvings);
        let dt = config.dt.min(horizon);
        let cfg = SolverConfig { horizon, dt, ..config.clone() };
        let out = picard_sequence(space, theta0, &cfg, iterations)?;
        let ok = out.contracts(target, 3);
        attempts.push((horizon, ok));
        if ok {
            return Ok((out, attempts));
        }
        last = Some(out);
    }
    Ok((last.expect("at least one attempt"), attempts))
}
