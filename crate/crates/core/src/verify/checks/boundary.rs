use serde::Serialize;

use crate::besov::phi0;
use crate::error::Result;
use crate::operators::{transport_grid, transport_trace};
use crate::spectral::{evaluate_at, multiply, SpectralField};
use crate::verify::checks::localization::localization_range;
use crate::verify::context::{Context, Level};
use crate::verify::report::{BoundKind, CheckReport, Criterion, ReportBuilder};
use crate::verify::support::{loglog_slope, max_of, min_of, par_members, per_level};

pub const PROBE_RADII: [f64; 3] = [0.9, 0.99, 0.999];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceSample {
    pub member: usize,
    pub k: i32,
    pub l: i32,
    /// Ring maxima at the probe radii.
    pub traces: Vec<f64>,
    pub interior_max: f64,
    /// Slope of `ln trace` against `ln(1 - r)`.
    pub decay_slope: f64,
}

impl TraceSample {
    pub fn outer_ratio(&self) -> f64 {
        self.traces[PROBE_RADII.len() - 1] / self.interior_max
    }

    /// `trace(0.999) / ((1 - 0.999) interior_max)`.
    pub fn linear_constant(&self) -> f64 {
        self.outer_ratio() / (1.0 - PROBE_RADII[PROBE_RADII.len() - 1])
    }
}

fn block(level: &Level, f: &SpectralField, j: i32) -> SpectralField {
    multiply(level.space.basis(), f, |l| phi0(l * 2f64.powi(-j)))
}

/// Lowest dyadic block whose support `[2^{j-1}, 2^{j+1}]` meets the spectrum.
fn lowest_block(level: &Level) -> i32 {
    level.space.basis().lambda_min().log2().ceil() as i32 - 1
}

/// Block pair `(k, l)` assigned to member `i`, cycling through the three
/// lowest non-empty blocks.
fn blocks_for(level: &Level, i: usize) -> (i32, i32) {
    let lo = lowest_block(level);
    (lo + (i % 3) as i32, lo + ((i / 3) % 3) as i32)
}

/// `trace(0.999) / interior max` with `k = l = j` for the first member, for
/// every non-empty block: the trace is `O((1 - r) 2^j)`.
fn frequency_sweep(level: &Level) -> Result<Vec<(i32, f64)>> {
    let basis = level.space.basis();
    let fine = level.space.fine();
    let m = &level.members[0];
    (lowest_block(level)..=localization_range(basis).hi)
        .map(|j| {
            let f = block(level, &m.primary, j);
            let g = block(level, &m.partner, j);
            let traces = transport_trace(basis, &f, &g, fine.grid().ntheta(), &PROBE_RADII)?;
            let stream = multiply(basis, &f, |lam| 1.0 / lam);
            let interior = transport_grid(fine, &stream, &g)?.max_abs();
            Ok((j, traces[PROBE_RADII.len() - 1] / interior))
        })
        .collect()
}

fn level_samples(level: &Level) -> Result<Vec<TraceSample>> {
    let basis = level.space.basis();
    let fine = level.space.fine();
    par_members(&level.members, |i, m| {
        let (k, l) = blocks_for(level, i);
        let f = block(level, &m.primary, k);
        let g = block(level, &m.partner, l);
        let traces = transport_trace(basis, &f, &g, fine.grid().ntheta(), &PROBE_RADII)?;
        let stream = multiply(basis, &f, |lam| 1.0 / lam);
        let interior_max = transport_grid(fine, &stream, &g)?.max_abs();
        let gaps: Vec<f64> = PROBE_RADII.iter().map(|r| 1.0 - r).collect();
        let decay_slope = loglog_slope(&gaps, &traces);
        Ok(TraceSample { member: i, k, l, traces, interior_max, decay_slope })
    })
}

/// `(∇^⊥Λ_D^{-1}f·∇)g` at polar `(r, θ)`, pointwise.
fn transport_at(level: &Level, f: &SpectralField, g: &SpectralField, r: f64, theta: f64) -> Result<f64> {
    let basis = level.space.basis();
    let stream = multiply(basis, f, |lam| 1.0 / lam);
    let [sx, sy] = evaluate_at(basis, &stream, r, theta)?.grad;
    let [gx, gy] = evaluate_at(basis, g, r, theta)?.grad;
    Ok(-sy * gx + sx * gy)
}

/// Largest relative disagreement between the transport at `(0, 0.999)` and
/// the transport of rotated fields at the rotated point.
fn rotation_gap(ctx: &Context) -> Result<f64> {
    let level = &ctx.fine;
    let r = PROBE_RADII[PROBE_RADII.len() - 1];
    let half_pi = std::f64::consts::FRAC_PI_2;
    let mut worst = 0.0f64;
    for (i, m) in level.members.iter().enumerate().take(ctx.config.spot_members) {
        let (k, l) = blocks_for(level, i);
        let f = block(level, &m.primary, k);
        let g = block(level, &m.partner, l);
        let base = transport_at(level, &f, &g, r, half_pi)?;
        for alpha in [0.37, 1.9, 4.4] {
            let turned = transport_at(level, &f.rotated(alpha), &g.rotated(alpha), r, half_pi + alpha)?;
            worst = worst.max((turned - base).abs() / base.abs().max(f64::MIN_POSITIVE));
        }
    }
    Ok(worst)
}

pub fn check_boundary(ctx: &Context) -> Result<CheckReport> {
    let mut rep = ReportBuilder::new("boundary", ctx);
    let [coarse, fine] = per_level(ctx, level_samples)?;
    let lin = |s: &[TraceSample]| max_of(s.iter().map(TraceSample::linear_constant));
    rep.constant("C[trace <= C (1-r) interior max]", BoundKind::Upper, [lin(&coarse), lin(&fine)], true);

    let outer = max_of(coarse.iter().chain(&fine).map(TraceSample::outer_ratio));
    rep.criterion(Criterion::at_most("trace(0.999) / interior max", outer, 0.01));
    let slope = min_of(coarse.iter().chain(&fine).map(|s| s.decay_slope));
    rep.criterion(Criterion::above("min trace decay slope", slope, 0.0));
    for (i, r) in PROBE_RADII.iter().enumerate() {
        rep.metric(format!("max_ratio_r{r}"), max_of(fine.iter().map(|s| s.traces[i] / s.interior_max)));
    }
    let mean_slope = fine.iter().map(|s| s.decay_slope).sum::<f64>() / fine.len() as f64;
    rep.metric("mean_decay_slope", mean_slope);
    for (j, r) in frequency_sweep(&ctx.fine)? {
        rep.metric(format!("sweep_ratio_r0.999_j{j}"), r);
    }

    rep.criterion(Criterion::at_most("rotation invariance gap", rotation_gap(ctx)?, 1e-8));

    let level = &ctx.fine;
    let f = block(level, &level.members[0].primary, 3);
    let zero = transport_trace(
        level.space.basis(),
        &f,
        &level.space.zeros(),
        level.space.fine().grid().ntheta(),
        &PROBE_RADII,
    )?;
    rep.criterion(Criterion::at_most("trace with g = 0", max_of(zero), 0.0));
    rep.details(serde_json::json!({ "coarse": coarse, "fine": fine }));
    Ok(rep.finish())
}
