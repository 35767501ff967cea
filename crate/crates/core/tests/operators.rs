mod common;

use std::f64::consts::PI;

use common::{random_field, rel};
use sqg_disk::besov::low_pass;
use sqg_disk::operators::{
    advect, boundary_trace, commutator_block, gradient, green_kernel, hessian_of_inverse, perp_gradient, remainder,
    resolvent_commutator, transport_trace, velocity,
};
use sqg_disk::specfun::gauss_legendre;
use sqg_disk::spectral::{evaluate_at, lambda_power, DiskSpace, SpectralField};

#[test]
fn gradient_energy_equals_eigenvalue_squared() {
    let space = DiskSpace::new(24, 24).unwrap();
    let b = space.basis();
    let picks = [
        (0, 1),
        (0, 7),
        (1, 1),
        (1, 24),
        (2, 3),
        (3, 12),
        (5, 5),
        (7, 1),
        (8, 20),
        (10, 2),
        (11, 11),
        (13, 4),
        (15, 9),
        (17, 17),
        (19, 1),
        (20, 22),
        (22, 6),
        (23, 23),
        (24, 1),
        (24, 24),
    ];
    for (m, k) in picks {
        let e = SpectralField::unit_mode(b, m, k);
        let g = gradient(space.base(), &e).unwrap();
        let energy = g.dot(&g).integrate(space.grid()).unwrap();
        let lam = b.lambda(m, k - 1);
        assert!(rel(energy, lam * lam) < 1e-8, "({m},{k}): {energy} vs {}", lam * lam);
    }
}

#[test]
fn perp_gradient_is_orthogonal_and_radial_mode_has_radial_gradient() {
    let space = DiskSpace::new(8, 8).unwrap();
    let f = random_field(&space, 1, 0.0);
    let t = space.base();
    let g = gradient(t, &f).unwrap();
    let p = perp_gradient(t, &f).unwrap();
    assert!(g.dot(&p).max_abs() < 1e-12 * g.norm().max_abs().powi(2));

    let e = SpectralField::unit_mode(space.basis(), 0, 2);
    let g = gradient(t, &e).unwrap();
    let grid = t.grid();
    for i in 0..grid.nr() {
        for l in 0..grid.ntheta() {
            let [x, y] = grid.point(i, l);
            let r = x.hypot(y);
            let angular = (-y * g.x.at(i, l) + x * g.y.at(i, l)) / r;
            assert!(angular.abs() < 1e-10);
        }
    }
    let u = velocity(t, &e).unwrap();
    for i in 0..grid.nr() {
        for l in 0..grid.ntheta() {
            let [x, y] = grid.point(i, l);
            let radial = (x * u.x.at(i, l) + y * u.y.at(i, l)) / x.hypot(y);
            assert!(radial.abs() < 1e-10);
        }
    }
}

#[test]
fn velocity_is_divergence_free_and_tangent_at_the_boundary() {
    let space = DiskSpace::new(10, 10).unwrap();
    let theta = random_field(&space, 5, 1.0);
    let stream = lambda_power(space.basis(), -1.0, &theta).unwrap();
    let u = |x: f64, y: f64| {
        let pv = evaluate_at(space.basis(), &stream, x.hypot(y), y.atan2(x)).unwrap();
        [-pv.grad[1], pv.grad[0]]
    };
    let h = 1e-5;
    for (x, y) in [(0.1, 0.2), (-0.5, 0.3), (0.6, -0.6)] {
        let div = (u(x + h, y)[0] - u(x - h, y)[0] + u(x, y + h)[1] - u(x, y - h)[1]) / (2.0 * h);
        let scale = (u(x + h, y)[0] - u(x - h, y)[0]).abs() / (2.0 * h) + 1.0;
        assert!(div.abs() < 1e-6 * scale, "divergence {div}");
    }
    let mut prev = f64::INFINITY;
    for r in [0.99, 0.999, 0.9999] {
        let radial = (0..64)
            .map(|l| {
                let a = 2.0 * PI * l as f64 / 64.0;
                let v = u(r * a.cos(), r * a.sin());
                (v[0] * a.cos() + v[1] * a.sin()).abs()
            })
            .fold(0.0, f64::max);
        assert!(radial < prev);
        prev = radial;
    }
    assert!(prev < 1e-2);
}

#[test]
fn advection_is_antisymmetric_and_bilinear() {
    let space = DiskSpace::new(16, 16).unwrap();
    for seed in 0..3 {
        let f = random_field(&space, 10 + seed, 0.0);
        let g = random_field(&space, 20 + seed, 1.0);
        let bfg = advect(&space, &f, &g).unwrap();
        let pairing = bfg.dot(&g);
        let scale = bfg.l2_norm() * g.l2_norm();
        assert!(pairing.abs() < 1e-8 * scale, "⟨B(f,g),g⟩ = {pairing}, scale {scale}");
        let zero = advect(&space, &f, &space.zeros()).unwrap();
        assert_eq!(zero.max_abs_coeff(), 0.0);
        let twice = advect(&space, &f.scale(2.0), &g).unwrap();
        assert!((&twice - &bfg.scale(2.0)).max_abs_coeff() < 1e-12 * bfg.max_abs_coeff());
    }
}

#[test]
fn remainder_reproduces_commutators() {
    let space = DiskSpace::new(16, 16).unwrap();
    let b = space.basis();
    let f = low_pass(b, 4, &random_field(&space, 3, 0.0));
    let g = random_field(&space, 4, 0.0);
    for j in 1..7 {
        let direct = resolvent_commutator(&space, j, &f, &g).unwrap();
        let r = remainder(&space, j, &f, &g).unwrap();
        let err = (&direct - &r).l2_norm() / direct.l2_norm();
        assert!(err < 1e-6, "R_{j}: relative gap {err}");
        let block = commutator_block(&space, j, &f, &g).unwrap();
        let tele = &remainder(&space, j + 1, &f, &g).unwrap() - &r;
        let err = (&block - &tele).l2_norm() / block.l2_norm();
        assert!(err < 1e-6, "telescoping at {j}: {err}");
    }
}

#[test]
fn hessian_of_inverse_on_eigenmode() {
    let space = DiskSpace::new(6, 6).unwrap();
    let b = space.basis();
    let e = SpectralField::unit_mode(b, 2, 3);
    let lam = b.lambda(2, 2);
    let h = hessian_of_inverse(space.base(), &e.scale(lam * lam)).unwrap();
    let v = space.synthesize(&e).unwrap();
    let trace = h.xx.zip_map(&h.yy, |a, c| a + c);
    let lap = v.map(|x| -lam * lam * x);
    let diff = trace.zip_map(&lap, |a, c| a - c).max_abs();
    assert!(diff < 1e-9 * lap.max_abs());
    let grid = space.grid();
    let pv = evaluate_at(b, &e, grid.radii()[4], grid.theta(3)).unwrap();
    assert!((h.xy.at(4, 3) - pv.hess[1]).abs() < 1e-9 * lam * lam);
}

#[test]
fn green_kernel_inverts_the_laplacian() {
    let space = DiskSpace::new(2, 2).unwrap();
    let b = space.basis();
    let e = SpectralField::unit_mode(b, 0, 1);
    let lam = b.lambda(0, 0);
    let mode = |p: [f64; 2]| evaluate_at(b, &e, p[0].hypot(p[1]).min(1.0), p[1].atan2(p[0])).unwrap().value;
    // polar quadrature centred at x; ρ = ρ_max s² tames the logarithm
    let s_rule = gauss_legendre(60, 0.0, 1.0).unwrap();
    let a_rule = gauss_legendre(120, 0.0, 2.0 * PI).unwrap();
    for x in [[0.0, 0.0], [0.35, -0.2], [-0.1, 0.6]] {
        let mut acc = 0.0;
        for (a, wa) in a_rule.nodes.iter().zip(&a_rule.weights) {
            let (c, s) = (a.cos(), a.sin());
            let xd = x[0] * c + x[1] * s;
            let rho_max = -xd + (xd * xd + 1.0 - x[0] * x[0] - x[1] * x[1]).sqrt();
            for (t, wt) in s_rule.nodes.iter().zip(&s_rule.weights) {
                let rho = rho_max * t * t;
                let y = [x[0] + rho * c, x[1] + rho * s];
                let jac = rho * 2.0 * rho_max * t;
                acc += wa * wt * jac * green_kernel(x, y).unwrap() * lam * lam * mode(y);
            }
        }
        assert!((acc - mode(x)).abs() < 1e-6, "x = {x:?}: {acc} vs {}", mode(x));
    }
}

#[test]
fn traces_vanish_at_the_boundary() {
    let space = DiskSpace::new(12, 12).unwrap();
    let b = space.basis();
    let f = random_field(&space, 8, 1.0);
    let radii = [0.9, 0.99, 0.999, 0.999999];
    let tr = boundary_trace(b, &f, 64, &radii).unwrap();
    let sup = space.sup_norm(&f).unwrap();
    assert!(tr[3] < 1e-4 * sup);
    assert!(tr.windows(2).all(|w| w[1] < w[0]));

    let g = random_field(&space, 9, 1.0);
    let tt = transport_trace(b, &f, &g, 64, &radii).unwrap();
    let interior = transport_trace(b, &f, &g, 64, &[0.1, 0.3, 0.5, 0.7]).unwrap();
    let imax = interior.iter().cloned().fold(0.0, f64::max);
    assert!(tt[2] < 0.01 * imax, "{tt:?} vs {imax}");
    let zero = transport_trace(b, &f, &space.zeros(), 64, &radii).unwrap();
    assert!(zero.iter().all(|&v| v == 0.0));
}
