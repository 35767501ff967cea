use rayon::prelude::*;

use super::context::{Context, Level};
use super::ensemble::Member;
use crate::besov::{block_norms, Partition};
use crate::error::Result;
use crate::spectral::{DiskSpace, SpectralField};

/// Evaluates `f` on every member in parallel, preserving member order.
pub(crate) fn par_members<T, F>(members: &[Member], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize, &Member) -> Result<T> + Sync + Send,
{
    members.par_iter().enumerate().map(|(i, m)| f(i, m)).collect()
}

/// Runs `f` on the coarse and then the fine level.
pub(crate) fn per_level<T>(ctx: &Context, f: impl Fn(&Level) -> Result<T>) -> Result<[T; 2]> {
    Ok([f(&ctx.coarse)?, f(&ctx.fine)?])
}

/// Dyadic `‖φ_j(Λ_D) f‖_∞` for every block.
pub(crate) fn sup_blocks(space: &DiskSpace, f: &SpectralField) -> Result<Vec<(i32, f64)>> {
    block_norms(space, f, f64::INFINITY, &Partition::dyadic(space.basis()))
}

/// `‖(2^{js} b_j)_j‖_{ℓ^q}`.
pub(crate) fn besov_from_blocks(blocks: &[(i32, f64)], s: f64, q: f64) -> f64 {
    lq(blocks.iter().map(|&(j, n)| 2f64.powf(s * f64::from(j)) * n), q)
}

pub(crate) fn lq(values: impl Iterator<Item = f64>, q: f64) -> f64 {
    if q.is_infinite() {
        values.fold(0.0, f64::max)
    } else {
        values.map(|v| v.powf(q)).sum::<f64>().powf(1.0 / q)
    }
}

pub(crate) fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::NEG_INFINITY, f64::max)
}

pub(crate) fn min_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::INFINITY, f64::min)
}

/// Least-squares slope of `ln y` against `ln x`.
pub(crate) fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    sxy / sxx
}

pub(crate) const Q_EXPONENTS: [(f64, &str); 3] = [(1.0, "1"), (2.0, "2"), (f64::INFINITY, "inf")];
