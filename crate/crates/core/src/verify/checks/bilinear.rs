use crate::error::Result;
use crate::operators::{advect, transport};
use crate::spectral::SpectralField;
use crate::verify::context::{Context, Level};
use crate::verify::report::{BoundKind, CheckReport, Criterion, ReportBuilder};
use crate::verify::support::{besov_from_blocks, max_of, par_members, per_level, sup_blocks};

/// `[‖(∇^⊥f·∇)g‖_{Ḃ^0} / (‖f‖_{Ḃ^1}‖g‖_{Ḃ^1}), ‖B(f,g)‖_{Ḃ^0} / (‖f‖_{Ḃ^0}‖g‖_{Ḃ^1})]`,
/// all norms `Ḃ^s_{∞,1}`.
pub fn bilinear_ratios(level: &Level, f: &SpectralField, g: &SpectralField) -> Result<[f64; 2]> {
    let space = &level.space;
    let b0 = |h: &SpectralField| -> Result<f64> { Ok(besov_from_blocks(&sup_blocks(space, h)?, 0.0, 1.0)) };
    let bf = sup_blocks(space, f)?;
    let g1 = besov_from_blocks(&sup_blocks(space, g)?, 1.0, 1.0);
    let direct = b0(&transport(space, f, g)?)? / (besov_from_blocks(&bf, 1.0, 1.0) * g1);
    let sqg = b0(&advect(space, f, g)?)? / (besov_from_blocks(&bf, 0.0, 1.0) * g1);
    Ok([direct, sqg])
}

pub fn check_bilinear(ctx: &Context) -> Result<CheckReport> {
    let mut rep = ReportBuilder::new("bilinear", ctx);
    let [coarse, fine] =
        per_level(ctx, |l| par_members(&l.members, |_, m| bilinear_ratios(l, &m.primary, &m.partner)))?;
    for (i, label) in ["C[stream f]", "C[stream Lambda^-1 f]"].iter().enumerate() {
        let c = [max_of(coarse.iter().map(|r| r[i])), max_of(fine.iter().map(|r| r[i]))];
        rep.constant(*label, BoundKind::Upper, c, true);
    }

    let level = &ctx.fine;
    let m = &level.members[0];
    let base = bilinear_ratios(level, &m.primary, &m.partner)?;
    let doubled = bilinear_ratios(level, &m.primary.scale(2.0), &m.partner)?;
    let drift = (0..2).map(|i| (doubled[i] / base[i] - 1.0).abs()).fold(0.0, f64::max);
    rep.criterion(Criterion::at_most("homogeneity drift", drift, 1e-12));

    // B(e, e) = λ^{-1} ∇^⊥e · ∇e vanishes identically
    let space = &level.space;
    let b = space.basis();
    let e = SpectralField::unit_mode(b, b.max_m().min(3), b.max_k().min(2));
    let self_transport = space.sup_norm(&advect(space, &e, &e)?)? / space.sup_norm(&e)?.powi(2);
    rep.criterion(Criterion::at_most("single-mode self transport", self_transport, 1e-10));
    Ok(rep.finish())
}
