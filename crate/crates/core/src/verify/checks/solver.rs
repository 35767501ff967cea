use std::time::Instant;

use crate::error::Result;
use crate::sqg::{duhamel_residual, run_direct, Drive, SolverConfig};
use crate::verify::checks::picard::datum;
use crate::verify::context::{Context, Level};
use crate::verify::report::{CheckReport, Criterion, ReportBuilder};
use crate::verify::support::max_of;

/// Decay profile of the smooth datum.
const SMOOTH_PROFILE: f64 = 2.0;
/// Wall-clock allowance for one run to `T`.
const RUN_BUDGET_SECONDS: f64 = 120.0;

struct SolverLevel {
    energy_defect: f64,
    sup_increase: f64,
    sup_tolerance: f64,
    slope: f64,
    duhamel: f64,
    seconds: f64,
}

fn level_run(ctx: &Context, level: &Level) -> Result<SolverLevel> {
    let cfg = ctx.solver_for(level);
    let theta0 = datum(ctx, level, SMOOTH_PROFILE, None, 1.0)?;
    let started = Instant::now();
    let out = run_direct(&level.space, &theta0, &cfg)?;
    let seconds = started.elapsed().as_secs_f64();
    let d = &out.diagnostics;
    // diagnostics are recorded every `cadence` steps
    let sup_tolerance = 1e-8 * cfg.cadence as f64;
    let sup_increase = max_of(d.sup.windows(2).map(|w| w[1] - w[0]));
    let duhamel = duhamel_residual(&level.space, &out.trajectory, 0.0, Drive::SelfAdvect)? / theta0.l2_norm();

    let mut finals = Vec::new();
    for factor in [1.0, 0.5, 0.25] {
        let c = SolverConfig { dt: cfg.dt * factor, cadence: 1000, ..cfg.clone() };
        let o = run_direct(&level.space, &theta0, &c)?;
        finals.push(o.trajectory.last().cloned().unwrap_or_else(|| level.space.zeros()));
    }
    let e: Vec<f64> = finals.windows(2).map(|w| (&w[0] - &w[1]).l2_norm()).collect();
    Ok(SolverLevel {
        energy_defect: max_of(d.energy_defect.iter().map(|v| v.abs())),
        sup_increase,
        sup_tolerance,
        slope: (e[0] / e[1]).log2(),
        duhamel,
        seconds,
    })
}

pub fn check_solver(ctx: &Context) -> Result<CheckReport> {
    let mut rep = ReportBuilder::new("solver", ctx);
    for (name, level) in [("coarse", &ctx.coarse), ("fine", &ctx.fine)] {
        let r = level_run(ctx, level)?;
        rep.criterion(Criterion::at_most(format!("energy identity defect ({name})"), r.energy_defect, 1e-6));
        rep.criterion(Criterion::at_most(format!("sup norm increase ({name})"), r.sup_increase, r.sup_tolerance));
        rep.criterion(Criterion::within(format!("ETDRK2 convergence slope ({name})"), r.slope, 1.8, 2.2));
        rep.criterion(Criterion::at_most(format!("run time to T, seconds ({name})"), r.seconds, RUN_BUDGET_SECONDS));
        rep.metric(format!("duhamel_residual_{name}"), r.duhamel);
    }
    Ok(rep.finish())
}
