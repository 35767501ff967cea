use crate::besov::phi0;
use crate::error::Result;
use crate::operators::gradient;
use crate::spectral::{multiply, resolvent_scaled, SpectralField};
use crate::verify::checks::localization::localization_range;
use crate::verify::context::{Context, Level};
use crate::verify::report::{BoundKind, CheckReport, Criterion, ReportBuilder};
use crate::verify::support::{max_of, par_members, per_level, sup_blocks};

/// Largest admissible constant for `‖Λ_D^m φ_j f‖_p <= C 2^{mj} ‖φ_j f‖_p`.
const POWER_BOUND: f64 = 4.0;
/// Extra blocks on each side of the active range for the resolvent bound.
const RESOLVENT_MARGIN: i32 = 4;

#[derive(Clone, Debug, Default)]
struct MemberBounds {
    /// `[m=1 p=∞, m=2 p=∞, m=1 p=2, m=2 p=2]`
    powers: [f64; 4],
    gradient: f64,
    projected_gradient: f64,
    resolvent: f64,
    /// `‖φ_j f‖_∞ / ‖f‖_∞` per active block.
    block_gain: Vec<f64>,
}

fn dyadic(level: &Level, f: &SpectralField, j: i32) -> SpectralField {
    multiply(level.space.basis(), f, |l| phi0(l * 2f64.powi(-j)))
}

fn member_bounds(level: &Level, f: &SpectralField) -> Result<MemberBounds> {
    let space = &level.space;
    let basis = space.basis();
    let fine = space.fine();
    let sup_f = space.sup_norm(f)?;
    let blocks = sup_blocks(space, f)?;
    let block_sup = |j: i32| blocks.iter().find(|b| b.0 == j).map_or(0.0, |b| b.1);
    // ∇f projected back onto the basis on the padded grid
    let grad = gradient(space.dealias(), f)?;
    let px = space.dealias().analyze(&grad.x)?;
    let py = space.dealias().analyze(&grad.y)?;

    let mut out = MemberBounds::default();
    for j in localization_range(basis).iter() {
        let b = dyadic(level, f, j);
        let n_inf = space.sup_norm(&b)?;
        out.block_gain.push(n_inf / sup_f);
        if n_inf < 1e-12 {
            continue;
        }
        let n2 = b.l2_norm();
        for m in 1..=2 {
            let scale = 2f64.powi(m * j);
            let lifted = multiply(basis, &b, |l| l.powi(m));
            let slot = (m - 1) as usize;
            out.powers[slot] = out.powers[slot].max(space.sup_norm(&lifted)? / (scale * n_inf));
            out.powers[slot + 2] = out.powers[slot + 2].max(lifted.l2_norm() / (scale * n2));
        }
        let g = gradient(fine, &b)?.norm().max_abs();
        out.gradient = out.gradient.max(g / (2f64.powi(j) * n_inf));
        let qx = fine.synthesize(&dyadic(level, &px, j))?;
        let qy = fine.synthesize(&dyadic(level, &py, j))?;
        let near: f64 = (j - 1..=j + 1).map(block_sup).sum();
        let pg = qx.zip_map(&qy, f64::hypot).max_abs();
        out.projected_gradient = out.projected_gradient.max(pg / (2f64.powi(j) * near));
    }
    let range = localization_range(basis);
    for j in range.lo - RESOLVENT_MARGIN..=range.hi + RESOLVENT_MARGIN {
        out.resolvent = out.resolvent.max(space.sup_norm(&resolvent_scaled(basis, j, f)?)? / sup_f);
    }
    Ok(out)
}

pub fn check_bernstein_multipliers(ctx: &Context) -> Result<CheckReport> {
    let mut rep = ReportBuilder::new("bernstein_multipliers", ctx);
    let [coarse, fine] = per_level(ctx, |l| par_members(&l.members, |_, m| member_bounds(l, &m.primary)))?;
    let both = |get: &dyn Fn(&MemberBounds) -> f64| [max_of(coarse.iter().map(get)), max_of(fine.iter().map(get))];
    let labels = ["C[Lambda^1, p=inf]", "C[Lambda^2, p=inf]", "C[Lambda^1, p=2]", "C[Lambda^2, p=2]"];
    for (i, label) in labels.iter().enumerate() {
        let c = both(&|b| b.powers[i]);
        rep.constant(*label, BoundKind::Upper, c, true);
        rep.criterion(Criterion::at_most(format!("{label} bound"), c[0].max(c[1]), POWER_BOUND));
    }
    rep.constant("C[grad phi_j f, p=inf]", BoundKind::Upper, both(&|b| b.gradient), true);
    rep.constant("C[phi_j grad f, p=inf]", BoundKind::Upper, both(&|b| b.projected_gradient), false);
    rep.note("phi_j grad f is normalised by the three neighbouring blocks of f; the projection of grad f onto the Dirichlet basis is not band-limited, so this constant is report-only");
    rep.constant("sup_j resolvent norm", BoundKind::Upper, both(&|b| b.resolvent), true);

    let blocks = fine[0].block_gain.len();
    let per_j: Vec<f64> = (0..blocks).map(|j| max_of(fine.iter().map(|b| b.block_gain[j]))).collect();
    for (j, g) in localization_range(ctx.fine.space.basis()).iter().zip(&per_j) {
        rep.metric(format!("block_gain_j{j}"), *g);
    }
    rep.j_spread(&per_j);

    // single modes: ‖Λ φ_j e‖_∞ / ‖φ_j e‖_∞ = λ <= 2·2^j on the support
    let space = &ctx.fine.space;
    let basis = space.basis();
    let mut worst = 0.0f64;
    let modes = [(0, 1), (2, 5), (7, 3), (12, 12), (20, 9)];
    for (m, k) in modes.into_iter().filter(|&(m, k)| m <= basis.max_m() && k <= basis.max_k()) {
        let e = SpectralField::unit_mode(basis, m, k);
        let lam = basis.lambda(m, k - 1);
        for j in localization_range(basis).iter().filter(|&j| phi0(lam * 2f64.powi(-j)) > 0.0) {
            let b = dyadic(&ctx.fine, &e, j);
            let ratio = space.sup_norm(&multiply(basis, &b, |l| l))? / space.sup_norm(&b)?;
            worst = worst.max((ratio / lam - 1.0).abs());
            if lam > 2.0 * 2f64.powi(j) {
                worst = f64::INFINITY;
            }
        }
    }
    rep.criterion(Criterion::at_most("single-mode multiplier error", worst, 1e-10));
    Ok(rep.finish())
}
