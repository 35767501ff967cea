use serde::Serialize;

use crate::besov::{psi, JRange};
use crate::error::Result;
use crate::specfun::gauss_legendre;
use crate::spectral::{evaluate_at, multiply, DiskSpace, EigenBasis, SpectralField};
use crate::verify::context::{Context, Level};
use crate::verify::report::{BoundKind, CheckReport, Criterion, ReportBuilder};
use crate::verify::support::{min_of, par_members, per_level};

/// Blocks below this sup norm are skipped.
const DEGENERATE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalizationSample {
    pub member: usize,
    pub j: i32,
    /// Maximiser of `|ψ_j f|`.
    pub x0: [f64; 2],
    /// `Λ_D ψ_j f(x_0) · sign ψ_j f(x_0)`.
    pub value: f64,
    pub block_sup: f64,
    /// `value / (2^j ‖ψ_j f‖_∞)`.
    pub ratio: f64,
}

/// Blocks whose peak `λ = 2^j` lies in `[λ_min/4, λ_max]`.
pub fn localization_range(basis: &EigenBasis) -> JRange {
    JRange { lo: basis.lambda_min().log2().floor() as i32 - 1, hi: basis.lambda_max().log2().floor() as i32 }
}

/// `c_1` with `λ = c_1 ∫_0^∞ t^{-3/2}(1 - e^{-tλ²}) dt`, i.e. the reciprocal
/// of `∫_0^∞ s^{-3/2}(1 - e^{-s}) ds`, by Gauss–Legendre after `s = u²`.
pub fn subordination_constant() -> Result<f64> {
    const CUT: f64 = 8.0;
    let rule = gauss_legendre(96, 0.0, CUT)?;
    let head: f64 = rule.nodes.iter().zip(&rule.weights).map(|(&u, &w)| w * 2.0 * -(-u * u).exp_m1() / (u * u)).sum();
    // ∫_CUT^∞ 2(1 - e^{-u²})/u² du, the e^{-u²} part being below 1e-29
    Ok(1.0 / (head + 2.0 / CUT))
}

/// Signed ratio at the maximiser of `|ψ_j f|`, or `None` for a degenerate
/// block.
pub fn localization_sample(space: &DiskSpace, f: &SpectralField, j: i32) -> Result<Option<LocalizationSample>> {
    let basis = space.basis();
    let block = multiply(basis, f, |l| psi(j, l));
    let ext = space.locate_extremum(&block)?;
    let sup = ext.value.abs();
    if sup < DEGENERATE {
        return Ok(None);
    }
    let lifted = multiply(basis, &block, |l| l);
    let [x, y] = ext.point;
    let pv = evaluate_at(basis, &lifted, x.hypot(y).min(1.0), y.atan2(x))?;
    let value = pv.value * ext.value.signum();
    let sample =
        LocalizationSample { member: 0, j, x0: ext.point, value, block_sup: sup, ratio: value / (2f64.powi(j) * sup) };
    Ok(Some(sample))
}

fn level_samples(level: &Level) -> Result<(Vec<LocalizationSample>, usize)> {
    let range = localization_range(level.space.basis());
    let per_member = par_members(&level.members, |i, m| {
        let mut out = Vec::new();
        let mut skipped = 0;
        for j in range.iter() {
            match localization_sample(&level.space, &m.primary, j)? {
                Some(s) => out.push(LocalizationSample { member: i, ..s }),
                None => skipped += 1,
            }
        }
        Ok((out, skipped))
    })?;
    let skipped = per_member.iter().map(|p| p.1).sum();
    Ok((per_member.into_iter().flat_map(|p| p.0).collect(), skipped))
}

/// Single modes with `λ` nearest `2^j`: the ratio must be exactly `λ/2^j`.
fn single_mode_error(space: &DiskSpace) -> Result<(f64, f64)> {
    let basis = space.basis();
    let (mut worst, mut lowest) = (0.0f64, f64::INFINITY);
    for j in localization_range(basis).iter() {
        let target = 2f64.powi(j);
        let Some(mode) = basis
            .modes()
            .min_by(|a, b| (a.lambda.ln() - target.ln()).abs().total_cmp(&(b.lambda.ln() - target.ln()).abs()))
        else {
            continue;
        };
        let e = SpectralField::unit_mode(basis, mode.m.unsigned_abs() as usize, mode.k);
        if let Some(s) = localization_sample(space, &e, j)? {
            let exact = mode.lambda / target;
            worst = worst.max((s.ratio - exact).abs());
            lowest = lowest.min(s.ratio);
        }
    }
    Ok((worst, lowest))
}

pub fn check_localization(ctx: &Context) -> Result<CheckReport> {
    let mut rep = ReportBuilder::new("localization", ctx);
    let [(coarse, skip_c), (fine, skip_f)] = per_level(ctx, level_samples)?;
    let c = [min_of(coarse.iter().map(|s| s.ratio)), min_of(fine.iter().map(|s| s.ratio))];
    rep.constant("c", BoundKind::Lower, c, true);
    rep.criterion(Criterion::above("min ratio (coarse)", c[0], 0.0));
    rep.criterion(Criterion::above("min ratio (fine)", c[1], 0.0));

    let range = localization_range(ctx.fine.space.basis());
    let per_j: Vec<f64> = range.iter().map(|j| min_of(fine.iter().filter(|s| s.j == j).map(|s| s.ratio))).collect();
    for (j, v) in range.iter().zip(&per_j) {
        rep.metric(format!("min_ratio_j{j}"), *v);
    }
    rep.j_spread(&per_j);

    let (mode_err, mode_min) = single_mode_error(&ctx.fine.space)?;
    rep.criterion(Criterion::at_most("single-mode ratio error", mode_err, 1e-9));
    rep.criterion(Criterion::at_least("single-mode min ratio", mode_min, 0.5));

    let c1 = subordination_constant()?;
    let exact = 0.5 / std::f64::consts::PI.sqrt();
    rep.metric("subordination_c1", c1);
    rep.criterion(Criterion::at_most("subordination constant error", (c1 - exact).abs(), 1e-12));

    rep.metric("skipped_coarse", skip_c as f64);
    rep.metric("skipped_fine", skip_f as f64);
    rep.metric("samples_coarse", coarse.len() as f64);
    rep.metric("samples_fine", fine.len() as f64);
    rep.details(serde_json::json!({ "coarse": coarse, "fine": fine }));
    Ok(rep.finish())
}
