use crate::besov::{low_pass, psi, Partition};
use crate::error::Result;
use crate::operators::{advect, commutator_block, remainder, resolvent_commutator};
use crate::spectral::{multiply, SpectralField};
use crate::verify::context::{Context, Level};
use crate::verify::report::{BoundKind, CheckReport, Criterion, ReportBuilder};
use crate::verify::support::{besov_from_blocks, lq, max_of, par_members, per_level, sup_blocks, Q_EXPONENTS};

/// Low-pass cutoff of the drift in the remainder spot checks, so that the
/// products stay resolved on the padded grid.
const DRIFT_CUTOFF: i32 = 4;

/// `‖[B(f, ·), ψ_j] g‖_∞` over the resolvent block range.
pub fn commutator_blocks(level: &Level, f: &SpectralField, g: &SpectralField) -> Result<Vec<f64>> {
    let space = &level.space;
    let basis = space.basis();
    let bfg = advect(space, f, g)?;
    Partition::resolvent(basis)
        .range()
        .iter()
        .map(|j| {
            let w = |l: f64| psi(j, l);
            let c = &advect(space, f, &multiply(basis, g, w))? - &multiply(basis, &bfg, w);
            space.sup_norm(&c)
        })
        .collect()
}

/// Per member: `[b1(q), half(q)]` ratios for each `q`, where `b1` pairs
/// `‖f‖_{Ḃ^1_{∞,1}} ‖g‖_{Ḃ^0_{∞,q}}` and `half` pairs
/// `‖f‖_{Ḃ^{1/2}_{∞,∞}} ‖g‖_{Ḃ^{1/2}_{∞,q}}`.
fn level_ratios(level: &Level) -> Result<Vec<[[f64; 2]; 3]>> {
    par_members(&level.members, |_, m| {
        let (f, g) = (&m.primary, &m.partner);
        let c = commutator_blocks(level, f, g)?;
        let bf = sup_blocks(&level.space, f)?;
        let bg = sup_blocks(&level.space, g)?;
        let f1 = besov_from_blocks(&bf, 1.0, 1.0);
        let fh = besov_from_blocks(&bf, 0.5, f64::INFINITY);
        let mut out = [[0.0; 2]; 3];
        for (slot, (q, _)) in out.iter_mut().zip(Q_EXPONENTS) {
            let lhs = lq(c.iter().copied(), q);
            *slot = [lhs / (f1 * besov_from_blocks(&bg, 0.0, q)), lhs / (fh * besov_from_blocks(&bg, 0.5, q))];
        }
        Ok(out)
    })
}

/// Largest relative gaps of the remainder identity and of its telescoped
/// form over the spot members and the dyadic block range.
fn remainder_gaps(ctx: &Context, level: &Level) -> Result<(f64, f64)> {
    let space = &level.space;
    let basis = space.basis();
    let n = ctx.config.spot_members.min(level.members.len()).max(1);
    let picks: Vec<usize> = (0..n).map(|i| i * level.members.len() / n).collect();
    let hi = basis.lambda_max().log2().ceil() as i32;
    let gaps = par_members(&level.members, |i, m| {
        if !picks.contains(&i) {
            return Ok((0.0, 0.0));
        }
        let f = low_pass(basis, DRIFT_CUTOFF, &m.primary);
        let g = &m.partner;
        let (mut ident, mut tele) = (0.0f64, 0.0f64);
        let mut r_prev = remainder(space, 1, &f, g)?;
        for j in 1..hi {
            let direct = resolvent_commutator(space, j, &f, g)?;
            ident = ident.max((&direct - &r_prev).l2_norm() / direct.l2_norm());
            let r_next = remainder(space, j + 1, &f, g)?;
            let block = commutator_block(space, j, &f, g)?;
            tele = tele.max((&block - &(&r_next - &r_prev)).l2_norm() / block.l2_norm());
            r_prev = r_next;
        }
        Ok((ident, tele))
    })?;
    Ok((max_of(gaps.iter().map(|g| g.0)), max_of(gaps.iter().map(|g| g.1))))
}

pub fn check_commutator(ctx: &Context) -> Result<CheckReport> {
    let mut rep = ReportBuilder::new("commutator", ctx);
    let [coarse, fine] = per_level(ctx, level_ratios)?;
    for (qi, (_, qname)) in Q_EXPONENTS.iter().enumerate() {
        for (v, vname) in ["f in B^1_{inf,1}", "f in B^1/2_{inf,inf}"].iter().enumerate() {
            let c = [max_of(coarse.iter().map(|r| r[qi][v])), max_of(fine.iter().map(|r| r[qi][v]))];
            rep.constant(format!("C[{vname}, q={qname}]"), BoundKind::Upper, c, true);
        }
    }
    let [(id_c, tel_c), (id_f, tel_f)] = per_level(ctx, |l| remainder_gaps(ctx, l))?;
    rep.criterion(Criterion::at_most("remainder identity gap", id_c.max(id_f), 1e-6));
    rep.criterion(Criterion::at_most("remainder telescoping gap", tel_c.max(tel_f), 1e-6));

    let g = &ctx.fine.members[0].partner;
    let zero = commutator_block(&ctx.fine.space, 3, &ctx.fine.space.zeros(), g)?;
    rep.criterion(Criterion::at_most("zero drift commutator", ctx.fine.space.sup_norm(&zero)?, 0.0));
    Ok(rep.finish())
}
