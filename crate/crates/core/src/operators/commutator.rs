use num_complex::Complex64;

use super::differential::advect;
use crate::besov::psi;
use crate::error::Result;
use crate::spectral::{multiply, DiskSpace, GridField, SpectralField};

/// `[B(f, ·), ψ_j(Λ_D)] g = B(f, ψ_j g) - ψ_j B(f, g)`.
pub fn commutator_block(space: &DiskSpace, j: i32, f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    let b = space.basis();
    let lhs = advect(space, f, &multiply(b, g, |l| psi(j, l)))?;
    let rhs = multiply(b, &advect(space, f, g)?, |l| psi(j, l));
    Ok(&lhs - &rhs)
}

/// `B(f, Q_j g) - Q_j B(f, g)` with `Q_j = (1 - 2^{-2j}Δ_D)^{-1}`, computed
/// directly from two advections.
pub fn resolvent_commutator(space: &DiskSpace, j: i32, f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    let b = space.basis();
    let eps = 4f64.powi(-j);
    let q = |l: f64| 1.0 / (1.0 + eps * l * l);
    let lhs = advect(space, f, &multiply(b, g, q))?;
    let rhs = multiply(b, &advect(space, f, g)?, q);
    Ok(&lhs - &rhs)
}

/// The remainder `R_j(f, g) = -2^{-2j} Q_j [Δ, A_f] Q_j g`, where `A_f` is
/// transport by `∇^⊥ψ`, `ψ = Λ_D^{-1} f`, and
///
/// ```text
/// [Δ, A_f] h = (∇^⊥Δψ · ∇) h + 2 ∇(∇^⊥ψ) : ∇²h
///            = Im(conj(∂_+Δψ) ∂_+h) + Im(conj(∂_+²ψ) ∂_+²h).
/// ```
///
/// It equals [`resolvent_commutator`] up to discretisation, and
/// `R_{j+1} - R_j` reproduces [`commutator_block`].
pub fn remainder(space: &DiskSpace, j: i32, f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    f.check(space.basis())?;
    let b = space.basis();
    let t = space.dealias();
    let eps = 4f64.powi(-j);
    let q = |l: f64| 1.0 / (1.0 + eps * l * l);
    let stream = multiply(b, f, |l| 1.0 / l);
    // Δψ = -Λ_D f
    let lap_stream = multiply(b, f, |l| -l);
    let h = multiply(b, g, q);
    let a1 = t.synthesize_plus(&lap_stream, 1)?;
    let h1 = t.synthesize_plus(&h, 1)?;
    let a2 = t.synthesize_plus(&stream, 2)?;
    let h2 = t.synthesize_plus(&h, 2)?;
    let im = |p: &Complex64, q: &Complex64| (p.conj() * q).im;
    let values =
        a1.iter().zip(&h1).zip(a2.iter().zip(&h2)).map(|((p1, q1), (p2, q2))| im(p1, q1) + im(p2, q2)).collect();
    let comm = t.analyze(&GridField::from_values(t.grid(), values)?)?;
    Ok(multiply(b, &comm, |l| -eps * q(l)))
}
