use std::collections::BTreeMap;

use crate::besov::spectral_sobolev_norm;
use crate::error::{Error, Result};
use crate::spectral::SpectralField;
use crate::sqg::{picard_auto_horizon, picard_sequence, run_direct, run_regularized, Drive, SolverConfig};
use crate::verify::context::{Context, Level};
use crate::verify::report::{BoundKind, CheckReport, Criterion, ReportBuilder};
use crate::verify::support::{loglog_slope, max_of, per_level};

/// First ensemble draw of the given profile, optionally band-limited to
/// `λ < band`, scaled to sup norm `amplitude` on the fine level and then
/// truncated to `level`.
pub(crate) fn datum(
    ctx: &Context,
    level: &Level,
    profile: f64,
    band: Option<f64>,
    amplitude: f64,
) -> Result<SpectralField> {
    let member = ctx
        .fine
        .members
        .iter()
        .find(|m| m.decay == profile)
        .ok_or_else(|| Error::Config(format!("no ensemble member with profile {profile}")))?;
    let space = &ctx.fine.space;
    let lambdas = space.basis().lambdas();
    let f = match band {
        Some(b) => member.primary.map_indexed(|i, c| if lambdas[i] < b { c } else { c * 0.0 }),
        None => member.primary.clone(),
    };
    let f = f.scale(amplitude / space.sup_norm(&f)?);
    let r = level.resolution;
    Ok(f.resized(r.max_m, r.max_k))
}

/// Diagnostics are not needed along the sweep runs.
const SWEEP_CADENCE: usize = 1000;

struct PicardLevel {
    horizon: f64,
    attempts: Vec<(f64, bool)>,
    distances: Vec<Option<f64>>,
    max_late_ratio: f64,
    contracts: bool,
    limit_gap: f64,
    gaps: Vec<f64>,
    slope: f64,
}

/// `max_t ‖θ_ε(t) - θ_{ε/2}(t)‖_{H¹}` over the stored states.
fn epsilon_gap(level: &Level, theta0: &SpectralField, cfg: &SolverConfig, eps: f64) -> Result<f64> {
    let run =
        |e: f64| run_regularized(&level.space, theta0, &SolverConfig { epsilon: e, ..cfg.clone() }, Drive::SelfAdvect);
    let (a, b) = (run(eps)?, run(eps / 2.0)?);
    Ok(max_of(
        a.trajectory
            .states()
            .iter()
            .zip(b.trajectory.states())
            .map(|(x, y)| spectral_sobolev_norm(level.space.basis(), &(x - y), 1.0)),
    ))
}

fn level_run(ctx: &Context, level: &Level) -> Result<PicardLevel> {
    let p = &ctx.config.picard;
    let cfg = ctx.solver_for(level);
    let small = datum(ctx, level, p.sweep_profile, Some(p.band), p.amplitude)?;
    let (out, attempts) = picard_auto_horizon(&level.space, &small, &cfg, p.iterations, p.target)?;
    let late: Vec<f64> = out.ratios().into_iter().filter(|&(n, _)| n >= 3).map(|r| r.1).collect();
    let direct_cfg = SolverConfig { horizon: out.horizon, dt: cfg.dt.min(out.horizon), ..cfg.clone() };
    let direct = run_direct(&level.space, &small, &direct_cfg)?;
    let limit_gap = match (direct.trajectory.last(), out.last.last()) {
        (Some(a), Some(b)) => (a - b).l2_norm(),
        _ => f64::INFINITY,
    };

    let rough = datum(ctx, level, p.sweep_profile, None, p.sweep_amplitude)?;
    let sweep_cfg = SolverConfig { cadence: SWEEP_CADENCE, ..cfg.clone() };
    let gaps = p.epsilons.iter().map(|&e| epsilon_gap(level, &rough, &sweep_cfg, e)).collect::<Result<Vec<_>>>()?;
    Ok(PicardLevel {
        horizon: out.horizon,
        attempts,
        distances: out.iterations.iter().map(|s| s.distance).collect(),
        max_late_ratio: max_of(late.iter().copied()),
        contracts: out.contracts(p.target, 3),
        limit_gap,
        slope: loglog_slope(&p.epsilons, &gaps),
        gaps,
    })
}

pub fn check_picard_epsilon(ctx: &Context) -> Result<CheckReport> {
    let mut rep = ReportBuilder::new("picard_epsilon", ctx);
    let p = &ctx.config.picard;
    let levels = per_level(ctx, |l| level_run(ctx, l))?;
    rep.constant("max D ratio (n >= 3)", BoundKind::Upper, [levels[0].max_late_ratio, levels[1].max_late_ratio], true);
    let mut details = BTreeMap::new();
    for (name, lv) in ["coarse", "fine"].iter().zip(&levels) {
        rep.criterion(Criterion::at_most(format!("D ratio for n >= 3 ({name})"), lv.max_late_ratio, p.target));
        rep.criterion(Criterion::at_least(
            format!("contraction found ({name})"),
            f64::from(u8::from(lv.contracts)),
            1.0,
        ));
        rep.criterion(Criterion::at_most(format!("Picard limit vs direct ({name})"), lv.limit_gap, p.limit_tolerance));
        rep.criterion(Criterion::within(
            format!("epsilon slope ({name})"),
            lv.slope,
            p.slope_target - p.slope_tolerance,
            p.slope_target + p.slope_tolerance,
        ));
        rep.metric(format!("horizon_{name}"), lv.horizon);
        details.insert(
            *name,
            serde_json::json!({
                "attempts": lv.attempts,
                "distances": lv.distances,
                "epsilons": p.epsilons,
                "h1_gaps": lv.gaps,
            }),
        );
    }

    let space = &ctx.coarse.space;
    let cfg = ctx.solver_for(&ctx.coarse);
    let zero = picard_sequence(space, &space.zeros(), &cfg, 4)?;
    let worst = max_of(zero.iterations.iter().filter_map(|s| s.distance));
    rep.criterion(Criterion::at_most("zero data distances", worst, 0.0));
    rep.details(serde_json::to_value(details)?);
    Ok(rep.finish())
}
