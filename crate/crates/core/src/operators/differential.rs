use crate::error::Result;
use crate::spectral::{lambda_power, multiply, DiskSpace, GridField, SpectralField, Transform};

/// Cartesian vector field sampled on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorGridField {
    pub x: GridField,
    pub y: GridField,
}

impl VectorGridField {
    pub fn dot(&self, other: &Self) -> GridField {
        let a = self.x.zip_map(&other.x, |p, q| p * q);
        let b = self.y.zip_map(&other.y, |p, q| p * q);
        a.zip_map(&b, |p, q| p + q)
    }

    pub fn norm(&self) -> GridField {
        self.x.zip_map(&self.y, f64::hypot)
    }

    /// Rotation by +90°: `(a, b) -> (-b, a)`.
    pub fn perp(&self) -> Self {
        Self { x: self.y.map(|v| -v), y: self.x.clone() }
    }
}

fn grid_field(t: &Transform, values: Vec<f64>) -> Result<GridField> {
    GridField::from_values(t.grid(), values)
}

/// `∇f` on the transform's grid.
pub fn gradient(t: &Transform, f: &SpectralField) -> Result<VectorGridField> {
    let d = t.synthesize_plus(f, 1)?;
    Ok(VectorGridField {
        x: grid_field(t, d.iter().map(|z| z.re).collect())?,
        y: grid_field(t, d.iter().map(|z| z.im).collect())?,
    })
}

/// `∇^⊥ f = (-∂_y f, ∂_x f)`.
pub fn perp_gradient(t: &Transform, f: &SpectralField) -> Result<VectorGridField> {
    Ok(gradient(t, f)?.perp())
}

/// SQG velocity `u = ∇^⊥ Λ_D^{-1} θ`.
pub fn velocity(t: &Transform, theta: &SpectralField) -> Result<VectorGridField> {
    perp_gradient(t, &lambda_power(t.basis(), -1.0, theta)?)
}

/// Pointwise `(∇^⊥ stream · ∇) g` on the transform's grid. With
/// `∂_+ = ∂_x + i∂_y` this is `Im(conj(∂_+ stream) ∂_+ g)`.
pub fn transport_grid(t: &Transform, stream: &SpectralField, g: &SpectralField) -> Result<GridField> {
    let a = t.synthesize_plus(stream, 1)?;
    let b = t.synthesize_plus(g, 1)?;
    grid_field(t, a.iter().zip(&b).map(|(p, q)| (p.conj() * q).im).collect())
}

/// Projection of `(∇^⊥ stream · ∇) g` onto the basis, evaluated on the
/// padded grid.
pub fn transport(space: &DiskSpace, stream: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    let t = space.dealias();
    t.analyze(&transport_grid(t, stream, g)?)
}

/// `B(f, g) = (∇^⊥ Λ_D^{-1} f · ∇) g`.
pub fn advect(space: &DiskSpace, f: &SpectralField, g: &SpectralField) -> Result<SpectralField> {
    f.check(space.basis())?;
    let stream = multiply(space.basis(), f, |l| 1.0 / l);
    transport(space, &stream, g)
}

/// Second derivatives of a scalar on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Hessian {
    pub xx: GridField,
    pub xy: GridField,
    pub yy: GridField,
}

impl Hessian {
    /// Largest entry magnitude over the grid.
    pub fn max_entry(&self) -> f64 {
        self.xx.max_abs().max(self.xy.max_abs()).max(self.yy.max_abs())
    }

    /// `L^p` norm of the pointwise Frobenius norm (`xy` counted twice).
    pub fn frobenius(&self) -> GridField {
        let t = self.xx.zip_map(&self.yy, |a, b| a * a + b * b);
        t.zip_map(&self.xy, |s, c| (s + 2.0 * c * c).sqrt())
    }
}

/// `∇²(-Δ_D)^{-1} f` on the transform's grid.
pub fn hessian_of_inverse(t: &Transform, f: &SpectralField) -> Result<Hessian> {
    let u = lambda_power(t.basis(), -2.0, f)?;
    // Δu = -f
    let lap: Vec<f64> = t.synthesize(f)?.values().iter().map(|v| -v).collect();
    let d2 = t.synthesize_plus(&u, 2)?;
    Ok(Hessian {
        xx: grid_field(t, lap.iter().zip(&d2).map(|(l, z)| 0.5 * (l + z.re)).collect())?,
        xy: grid_field(t, d2.iter().map(|z| 0.5 * z.im).collect())?,
        yy: grid_field(t, lap.iter().zip(&d2).map(|(l, z)| 0.5 * (l - z.re)).collect())?,
    })
}
