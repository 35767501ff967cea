use crate::error::Result;
use crate::operators::hessian_of_inverse;
use crate::spectral::{evaluate_at, SpectralField};
use crate::verify::context::{Context, Level};
use crate::verify::report::{BoundKind, CheckReport, Criterion, ReportBuilder};
use crate::verify::support::{besov_from_blocks, max_of, par_members, per_level, sup_blocks};

/// `[‖∇²(-Δ_D)^{-1}f‖_∞ / ‖f‖_{Ḃ^0_{∞,1}}, ‖∇²(-Δ_D)^{-1}f‖_2 / ‖f‖_2]`; the
/// sup uses the largest entry, the `L²` norm the Frobenius norm.
fn hessian_ratios(level: &Level, f: &SpectralField) -> Result<[f64; 2]> {
    let space = &level.space;
    let fine = space.fine();
    let h = hessian_of_inverse(fine, f)?;
    let b0 = besov_from_blocks(&sup_blocks(space, f)?, 0.0, 1.0);
    let l2 = h.frobenius().lp_norm(fine.grid(), 2.0)?;
    Ok([h.max_entry() / b0, l2 / f.l2_norm()])
}

pub fn check_second_derivative(ctx: &Context) -> Result<CheckReport> {
    let mut rep = ReportBuilder::new("second_derivative", ctx);
    let [coarse, fine] = per_level(ctx, |l| par_members(&l.members, |_, m| hessian_ratios(l, &m.primary)))?;
    for (i, label) in ["C[p=inf]", "C[p=2]"].iter().enumerate() {
        let c = [max_of(coarse.iter().map(|r| r[i])), max_of(fine.iter().map(|r| r[i]))];
        rep.constant(*label, BoundKind::Upper, c, true);
    }

    // f = -Δ_D e: the Hessian is that of e, with trace -λ² e
    let space = &ctx.fine.space;
    let basis = space.basis();
    let (m, k) = (basis.max_m().min(2), basis.max_k().min(3));
    let lam = basis.lambda(m, k - 1);
    let e = SpectralField::unit_mode(basis, m, k);
    let h = hessian_of_inverse(space.base(), &e.scale(lam * lam))?;
    let v = space.synthesize(&e)?;
    let trace = h.xx.zip_map(&h.yy, |a, b| a + b);
    let gap = trace.zip_map(&v, |t, x| t + lam * lam * x).max_abs() / (lam * lam * v.max_abs());
    rep.criterion(Criterion::at_most("single-mode trace error", gap, 1e-9));
    let grid = space.grid();
    let (i, l) = (grid.nr() / 3, grid.ntheta() / 5);
    let pv = evaluate_at(basis, &e, grid.radii()[i], grid.theta(l))?;
    let entry_gap = [h.xx.at(i, l) - pv.hess[0], h.xy.at(i, l) - pv.hess[1], h.yy.at(i, l) - pv.hess[2]]
        .iter()
        .fold(0.0f64, |a, d| a.max(d.abs()))
        / (lam * lam);
    rep.criterion(Criterion::at_most("single-mode Hessian entries", entry_gap, 1e-9));
    Ok(rep.finish())
}
