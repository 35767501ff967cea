//! Empirical-constant harness. Each check evaluates one inequality over a
//! seeded random ensemble at two basis sizes and reports the best constant
//! at each, plus any fixed-threshold criteria. A check passes when all its
//! criteria hold and every gated constant moves by at most the drift limit
//! between the two resolutions; a drifting constant marks it `unstable`.

mod checks;
mod context;
mod ensemble;
mod report;
mod support;

use std::io::Write;

pub use checks::*;
pub use context::{Context, Level, PicardSettings, RegularitySettings, Resolution, VerifyConfig};
pub use ensemble::{EnsembleSpec, Member};
pub use report::{BoundKind, CheckReport, Criterion, EmpiricalConstant, Status};

use crate::error::{Error, Result};

type CheckFn = fn(&Context) -> Result<CheckReport>;

/// Every check, in the order `all` runs them.
pub const CHECKS: [(&str, CheckFn); 10] = [
    ("localization", check_localization),
    ("commutator", check_commutator),
    ("bilinear", check_bilinear),
    ("norm_equivalence", check_norm_equivalence),
    ("boundary", check_boundary),
    ("bernstein_multipliers", check_bernstein_multipliers),
    ("max_regularity", check_max_regularity),
    ("second_derivative", check_second_derivative),
    ("picard_epsilon", check_picard_epsilon),
    ("solver", check_solver),
];

pub fn check_names() -> impl Iterator<Item = &'static str> {
    CHECKS.iter().map(|c| c.0)
}

/// Resolves `"all"` or a single check name.
pub fn select(name: &str) -> Result<Vec<&'static str>> {
    if name == "all" {
        return Ok(check_names().collect());
    }
    check_names().find(|n| *n == name).map(|n| vec![n]).ok_or_else(|| Error::UnknownCheck(name.to_string()))
}

pub fn run_check(ctx: &Context, name: &str) -> Result<CheckReport> {
    let (_, f) = CHECKS.iter().find(|c| c.0 == name).ok_or_else(|| Error::UnknownCheck(name.to_string()))?;
    f(ctx)
}

/// Runs the named checks in order.
pub fn run_checks(ctx: &Context, names: &[&str]) -> Result<Vec<CheckReport>> {
    names.iter().map(|n| run_check(ctx, n)).collect()
}

/// One line per report: `check,status,pass,stable,max_drift,failed_criteria`.
/// Wall-clock times stay in the JSON reports so the table is reproducible.
pub fn write_summary<W: Write>(mut out: W, reports: &[CheckReport]) -> Result<()> {
    writeln!(out, "check,status,pass,stable,max_drift,failed_criteria")?;
    for r in reports {
        let failed = r.criteria.iter().filter(|c| !c.passed).count();
        writeln!(out, "{},{},{},{},{:.16e},{}", r.check, r.status, r.pass, r.stable, r.max_drift(), failed)?;
    }
    Ok(())
}
