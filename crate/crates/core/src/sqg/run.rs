use super::config::SolverConfig;
use super::diagnostics::Diagnostics;
use super::integrator::{etd_step, propagate, Advection, EtdWeights};
use crate::besov::{block_norms, Partition};
use crate::error::{Error, Result};
use crate::operators::{advect, velocity};
use crate::spectral::{DiskSpace, SpectralField};

/// States at every step of a run, on a uniform time grid.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Trajectory {
    times: Vec<f64>,
    states: Vec<SpectralField>,
}

impl Trajectory {
    pub fn push(&mut self, t: f64, state: SpectralField) {
        self.times.push(t);
        self.states.push(state);
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn states(&self) -> &[SpectralField] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last(&self) -> Option<&SpectralField> {
        self.states.last()
    }

    /// Linear interpolation in time, clamped to the recorded interval.
    pub fn at(&self, t: f64) -> Result<SpectralField> {
        let n = self.times.len();
        if n == 0 {
            return Err(Error::InvalidArgument("empty trajectory".into()));
        }
        if t <= self.times[0] {
            return Ok(self.states[0].clone());
        }
        if t >= self.times[n - 1] {
            return Ok(self.states[n - 1].clone());
        }
        let i = self.times.partition_point(|&s| s <= t) - 1;
        let (t0, t1) = (self.times[i], self.times[i + 1]);
        let w = (t - t0) / (t1 - t0);
        if w < 1e-12 {
            return Ok(self.states[i].clone());
        }
        Ok(self.states[i].scale(1.0 - w).axpy(w, &self.states[i + 1]))
    }
}

/// What transports the scalar over a whole run.
#[derive(Clone, Copy, Debug)]
pub enum Drive<'a> {
    /// `∂_t θ + Lθ = 0`.
    Linear,
    /// The SQG nonlinearity `(∇^⊥Λ_D^{-1}θ · ∇)θ`.
    SelfAdvect,
    /// Linear transport by the stored trajectory: `(∇^⊥Λ_D^{-1}a(t) · ∇)θ`.
    Frozen(&'a Trajectory),
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub trajectory: Trajectory,
    pub diagnostics: Diagnostics,
}

/// Critical SQG, `ε = 0` regardless of the config.
pub fn run_direct(space: &DiskSpace, theta0: &SpectralField, config: &SolverConfig) -> Result<RunOutput> {
    let cfg = SolverConfig { epsilon: 0.0, ..config.clone() };
    integrate(space, theta0, &cfg, Drive::SelfAdvect, true)
}

/// The `ε`-viscous problem with the given drive.
pub fn run_regularized(
    space: &DiskSpace,
    theta0: &SpectralField,
    config: &SolverConfig,
    drive: Drive<'_>,
) -> Result<RunOutput> {
    integrate(space, theta0, config, drive, true)
}

/// Block sup norms of the dyadic decomposition; `‖·‖_{Ḃ^s_{∞,1}}` for
/// several `s` from one set of syntheses.
pub(crate) fn sup_besov(space: &DiskSpace, f: &SpectralField, orders: &[f64]) -> Result<Vec<f64>> {
    let blocks = block_norms(space, f, f64::INFINITY, &Partition::dyadic(space.basis()))?;
    Ok(orders.iter().map(|s| blocks.iter().map(|&(j, n)| 2f64.powf(s * j as f64) * n).sum()).collect())
}

fn max_speed(space: &DiskSpace, a: &SpectralField) -> Result<f64> {
    Ok(velocity(space.base(), a)?.norm().max_abs())
}

/// `B(a, θ)` for the drive's advecting field `a` at this time.
fn drive_forcing(
    space: &DiskSpace,
    drive: &Drive<'_>,
    drift: Option<&SpectralField>,
    theta: &SpectralField,
) -> Result<SpectralField> {
    match (drive, drift) {
        (Drive::SelfAdvect, _) => advect(space, theta, theta),
        (Drive::Frozen(_), Some(a)) => advect(space, a, theta),
        _ => Ok(space.zeros()),
    }
}

struct Recorder<'a> {
    space: &'a DiskSpace,
    epsilon: f64,
    diag: Diagnostics,
    energy0: f64,
    dissipated: f64,
    sup0: f64,
}

impl<'a> Recorder<'a> {
    fn sample(&mut self, t: f64, theta: &SpectralField) -> Result<()> {
        let sup = self.space.sup_norm_polished(theta)?;
        let b = sup_besov(self.space, theta, &[0.0, 1.0])?;
        let d = &mut self.diag;
        let integral = match (d.t.last(), d.besov1.last(), d.besov1_integral.last()) {
            (Some(&t0), Some(&b0), Some(&acc)) => acc + 0.5 * (t - t0) * (b0 + b[1]),
            _ => 0.0,
        };
        let l2 = theta.l2_norm();
        let defect = if self.energy0 > 0.0 { (l2 * l2 + self.dissipated - self.energy0) / self.energy0 } else { 0.0 };
        d.t.push(t);
        d.sup.push(sup);
        d.besov0.push(b[0]);
        d.besov1.push(b[1]);
        d.l2.push(l2);
        d.besov1_integral.push(integral);
        d.energy_defect.push(defect);
        Ok(())
    }

    /// `2∫⟨Lθ, θ⟩` over one step by the cubic Hermite rule
    /// `h(D_0 + D_1)/2 + h²(D'_0 - D'_1)/12`, with the rate
    /// `D = 2Σ g|c|²` differentiated along `ċ = -gc - B_c`.
    fn dissipate(&mut self, before: &SpectralField, after: &SpectralField, forcing: [&SpectralField; 2], h: f64) {
        let lam = self.space.basis().lambdas();
        let rate = |f: &SpectralField, b: &SpectralField| {
            let (mut d, mut dd) = (0.0, 0.0);
            for (i, (c, bc)) in f.coeffs().iter().zip(b.coeffs()).enumerate() {
                let g = lam[i] + self.epsilon * lam[i] * lam[i];
                let w = f.multiplicity(i) * g;
                d += 2.0 * w * c.norm_sqr();
                dd -= 4.0 * w * (g * c.norm_sqr() + (c.conj() * bc).re);
            }
            (d, dd)
        };
        let (d0, dd0) = rate(before, forcing[0]);
        let (d1, dd1) = rate(after, forcing[1]);
        self.dissipated += 0.5 * h * (d0 + d1) + h * h * (dd0 - dd1) / 12.0;
    }
}

fn aborted(t: f64, reason: String, rec: Option<Recorder<'_>>) -> Error {
    Error::Aborted { t, reason, partial: Box::new(rec.map(|r| r.diag).unwrap_or_default()) }
}

/// Integrates `∂_t θ + (Λ_D + εΛ_D²)θ + (drive · ∇)θ = 0` from `0` to `T` in
/// `ceil(T/dt)` equal steps, storing every state.
pub(crate) fn integrate(
    space: &DiskSpace,
    theta0: &SpectralField,
    cfg: &SolverConfig,
    drive: Drive<'_>,
    record: bool,
) -> Result<RunOutput> {
    cfg.validate()?;
    theta0.check(space.basis())?;
    if !theta0.is_finite() {
        return Err(Error::NonFinite("initial datum".into()));
    }
    let steps = cfg.steps();
    let h = cfg.horizon / steps as f64;
    let weights = EtdWeights::new(space.basis().lambdas(), h, cfg.epsilon);
    let lambda_max = space.basis().lambda_max();
    let guard = |a: &SpectralField| -> Result<()> {
        let speed = max_speed(space, a)?;
        let limit = cfg.cfl / (lambda_max * speed);
        if h > limit {
            return Err(Error::Cfl { dt: h, limit });
        }
        Ok(())
    };
    let drift_at = |t: f64| -> Result<Option<SpectralField>> {
        match drive {
            Drive::Frozen(a) => a.at(t).map(Some),
            _ => Ok(None),
        }
    };

    let mut rec = if record {
        let energy0 = theta0.l2_norm().powi(2);
        let sup0 = space.sup_norm_polished(theta0)?;
        let mut r =
            Recorder { space, epsilon: cfg.epsilon, diag: Diagnostics::default(), energy0, dissipated: 0.0, sup0 };
        r.sample(0.0, theta0)?;
        Some(r)
    } else {
        None
    };
    let sup0 = match &rec {
        Some(r) => r.sup0,
        None => space.sup_norm(theta0)?,
    };

    let mut traj = Trajectory::default();
    traj.push(0.0, theta0.clone());
    let mut theta = theta0.clone();
    let mut next_drift = drift_at(0.0)?;
    let mut forcing: Option<SpectralField> = None;
    for n in 0..steps {
        let t1 = (n + 1) as f64 * h;
        let start = next_drift.take();
        let end = drift_at(t1)?;
        if n % cfg.cadence == 0 {
            match (&drive, &start) {
                (Drive::SelfAdvect, _) => guard(&theta)?,
                (Drive::Frozen(_), Some(a)) => guard(a)?,
                _ => {}
            }
        }
        let advection = match (&drive, &start, &end) {
            (Drive::Linear, _, _) => Advection::None,
            (Drive::SelfAdvect, _, _) => Advection::SelfAdvect,
            (Drive::Frozen(_), Some(a), Some(b)) => Advection::Frozen { start: a, end: b },
            (Drive::Frozen(_), _, _) => unreachable!("frozen drift is always sampled"),
        };
        let next = etd_step(space, &weights, &theta, advection)?;
        if !next.is_finite() {
            return Err(aborted(t1, "non-finite coefficients".into(), rec));
        }
        if let Some(r) = rec.as_mut() {
            let b0 = match forcing.take() {
                Some(b) => b,
                None => drive_forcing(space, &drive, start.as_ref(), &theta)?,
            };
            let b1 = drive_forcing(space, &drive, end.as_ref(), &next)?;
            r.dissipate(&theta, &next, [&b0, &b1], h);
            forcing = Some(b1);
        }
        theta = next;
        traj.push(t1, theta.clone());
        next_drift = end;
        if (n + 1) % cfg.cadence == 0 || n + 1 == steps {
            let sup = match rec.as_mut() {
                Some(r) => {
                    r.sample(t1, &theta)?;
                    *r.diag.sup.last().expect("sample recorded")
                }
                None => space.sup_norm(&theta)?,
            };
            if sup > cfg.blowup_factor * sup0 {
                return Err(aborted(
                    t1,
                    format!("sup norm {sup:e} exceeds {}x its initial value {sup0:e}", cfg.blowup_factor),
                    rec,
                ));
            }
        }
    }
    Ok(RunOutput { trajectory: traj, diagnostics: rec.map(|r| r.diag).unwrap_or_default() })
}

/// `max_n ‖θ(t_n) - e^{-t_n L}θ_0 + ∫_0^{t_n} e^{-(t_n-τ)L} B(a, θ) dτ‖_{L²}`,
/// with the integral taken by exponential quadrature of the piecewise-linear
/// interpolant of `B` through the stored states.
pub fn duhamel_residual(space: &DiskSpace, trajectory: &Trajectory, epsilon: f64, drive: Drive<'_>) -> Result<f64> {
    let (times, states) = (trajectory.times(), trajectory.states());
    if states.is_empty() {
        return Ok(0.0);
    }
    let theta0 = &states[0];
    let forcing = |n: usize| -> Result<SpectralField> {
        match drive {
            Drive::Linear => Ok(space.zeros()),
            Drive::SelfAdvect => advect(space, &states[n], &states[n]),
            Drive::Frozen(a) => advect(space, &a.at(times[n])?, &states[n]),
        }
    };
    let mut integral = space.zeros();
    let mut b_prev = forcing(0)?;
    let mut worst: f64 = 0.0;
    let mut cached: Option<(f64, EtdWeights)> = None;
    for n in 1..states.len() {
        let h = times[n] - times[n - 1];
        let w = match &cached {
            Some((hc, w)) if (hc - h).abs() <= 1e-14 * h => w,
            _ => {
                cached = Some((h, EtdWeights::new(space.basis().lambdas(), h, epsilon)));
                &cached.as_ref().expect("just set").1
            }
        };
        let b_next = forcing(n)?;
        let diff = &b_next - &b_prev;
        integral = integral
            .map_indexed(|i, c| c * w.decay[i])
            .axpy(1.0, &b_prev.map_indexed(|i, c| c * w.phi1[i]))
            .axpy(1.0, &diff.map_indexed(|i, c| c * w.phi2[i]));
        let linear = propagate(space, theta0, times[n], epsilon);
        let residual = &(&states[n] - &linear) + &integral;
        worst = worst.max(residual.l2_norm());
        b_prev = b_next;
    }
    Ok(worst)
}
