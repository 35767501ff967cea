use crate::error::Result;
use crate::spectral::{multiply, SpectralField};
use crate::verify::context::{Context, Level, RegularitySettings};
use crate::verify::report::{BoundKind, CheckReport, Criterion, ReportBuilder};
use crate::verify::support::{besov_from_blocks, max_of, par_members, per_level, sup_blocks};

/// `0` followed by `samples` geometric times from `first_time` to `horizon`.
pub fn time_grid(settings: &RegularitySettings) -> Vec<f64> {
    let n = settings.samples;
    let ratio = (settings.horizon / settings.first_time).powf(1.0 / (n - 1) as f64);
    let mut t: Vec<f64> =
        std::iter::once(0.0).chain((0..n).map(|i| settings.first_time * ratio.powi(i as i32))).collect();
    t[n] = settings.horizon;
    t
}

/// Trapezoid rule exact for `c e^{-at}` on each interval: the logarithmic
/// mean of the endpoint values times the interval length.
pub fn exponential_trapezoid(t: &[f64], v: &[f64]) -> f64 {
    t.windows(2)
        .zip(v.windows(2))
        .map(|(tw, vw)| {
            let (h, a, b) = (tw[1] - tw[0], vw[0], vw[1]);
            if a > 0.0 && b > 0.0 && (a / b - 1.0).abs() > 1e-12 {
                h * (a - b) / (a / b).ln()
            } else {
                h * 0.5 * (a + b)
            }
        })
        .sum()
}

#[derive(Clone, Copy, Debug, Default)]
struct FlowRatios {
    /// `(‖θ‖_{L^∞Ḃ^0} + ‖θ‖_{L^1Ḃ^1}) / ‖θ_0‖_{Ḃ^0}` for `θ = e^{-tΛ}θ_0`.
    linear: f64,
    /// Same norms of `u = (1+t)θ` over `‖u(0)‖_{Ḃ^0} + ‖θ‖_{L^1Ḃ^0}`, the
    /// forcing of `u` being `θ` itself.
    manufactured: f64,
    /// `‖θ(T)‖_{Ḃ^1} / λ_min` relative to the left side.
    tail: f64,
}

fn flow_ratios(level: &Level, times: &[f64], theta0: &SpectralField) -> Result<FlowRatios> {
    let space = &level.space;
    let basis = space.basis();
    let (mut b0, mut b1) = (Vec::with_capacity(times.len()), Vec::with_capacity(times.len()));
    for &t in times {
        let theta = multiply(basis, theta0, |l| (-t * l).exp());
        let blocks = sup_blocks(space, &theta)?;
        b0.push(besov_from_blocks(&blocks, 0.0, 1.0));
        b1.push(besov_from_blocks(&blocks, 1.0, 1.0));
    }
    let weighted = |v: &[f64]| -> Vec<f64> { v.iter().zip(times).map(|(x, t)| (1.0 + t) * x).collect() };
    let lhs = max_of(b0.iter().copied()) + exponential_trapezoid(times, &b1);
    let lhs_u = max_of(weighted(&b0)) + exponential_trapezoid(times, &weighted(&b1));
    let rhs_u = b0[0] + exponential_trapezoid(times, &b0);
    Ok(FlowRatios {
        linear: lhs / b0[0],
        manufactured: lhs_u / rhs_u,
        tail: b1[b1.len() - 1] / basis.lambda_min() / lhs,
    })
}

pub fn check_max_regularity(ctx: &Context) -> Result<CheckReport> {
    let mut rep = ReportBuilder::new("max_regularity", ctx);
    let times = time_grid(&ctx.config.regularity);
    let [coarse, fine] = per_level(ctx, |l| par_members(&l.members, |_, m| flow_ratios(l, &times, &m.primary)))?;
    let both = |get: fn(&FlowRatios) -> f64| [max_of(coarse.iter().map(get)), max_of(fine.iter().map(get))];
    rep.constant("C[linear flow]", BoundKind::Upper, both(|r| r.linear), true);
    rep.constant("C[manufactured]", BoundKind::Upper, both(|r| r.manufactured), true);
    let tail = both(|r| r.tail);
    rep.criterion(Criterion::at_most("time truncation tail", tail[0].max(tail[1]), 1e-8));

    // one mode: ∫_0^T λ e^{-tλ} dt = 1 - e^{-Tλ}, weighted by the dyadic partition
    let level = &ctx.fine;
    let basis = level.space.basis();
    let (m, k) = (basis.max_m().min(3), basis.max_k().min(4));
    let lam = basis.lambda(m, k - 1);
    let e = SpectralField::unit_mode(basis, m, k);
    let got = flow_ratios(level, &times, &e)?.linear;
    let blocks = sup_blocks(&level.space, &e)?;
    let b0 = besov_from_blocks(&blocks, 0.0, 1.0);
    let b1 = besov_from_blocks(&blocks, 1.0, 1.0);
    let horizon = ctx.config.regularity.horizon;
    let exact = 1.0 + b1 / (lam * b0) * -(-horizon * lam).exp_m1();
    rep.criterion(Criterion::at_most("single-mode ratio error", (got / exact - 1.0).abs(), 1e-9));
    rep.metric("time_samples", times.len() as f64);
    Ok(rep.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_rule_is_exact_for_exponentials() {
        let t = [0.0, 0.1, 0.5, 2.0, 7.0];
        let v: Vec<f64> = t.iter().map(|x: &f64| 3.0 * (-1.7 * x).exp()).collect();
        let exact = 3.0 / 1.7 * (1.0 - (-1.7f64 * 7.0).exp());
        assert!((exponential_trapezoid(&t, &v) - exact).abs() < 1e-13);
    }

    #[test]
    fn grid_spans_horizon() {
        let s = RegularitySettings::default();
        let t = time_grid(&s);
        assert_eq!(t.len(), s.samples + 1);
        assert_eq!(t[0], 0.0);
        assert_eq!(t[1], s.first_time);
        assert_eq!(*t.last().unwrap(), s.horizon);
        assert!(t.windows(2).all(|w| w[1] > w[0]));
    }
}
