mod common;

use common::random_field;
use sqg_disk::besov::low_pass;
use sqg_disk::spectral::{semigroup, DiskSpace, Generator, SpectralField};
use sqg_disk::sqg::{duhamel_residual, picard_sequence, run_direct, run_regularized, Drive, SolverConfig, Trajectory};
use sqg_disk::Error;

fn small_config() -> SolverConfig {
    SolverConfig { max_m: 8, max_k: 8, dt: 5e-3, horizon: 0.2, cadence: 4, ..SolverConfig::default() }
}

fn normalized(space: &DiskSpace, f: SpectralField, amp: f64) -> SpectralField {
    let s = space.sup_norm(&f).unwrap();
    f.scale(amp / s)
}

#[test]
fn zero_data_stays_zero() {
    let cfg = small_config();
    let space = cfg.space().unwrap();
    let out = run_direct(&space, &space.zeros(), &cfg).unwrap();
    assert!(out.trajectory.states().iter().all(|s| s.max_abs_coeff() == 0.0));
    let d = &out.diagnostics;
    for (_, col) in d.columns().into_iter().skip(1) {
        assert!(col.iter().all(|&v| v == 0.0));
    }
}

#[test]
fn radial_data_evolves_linearly() {
    let cfg = small_config();
    let space = cfg.space().unwrap();
    let e = SpectralField::unit_mode(space.basis(), 0, 1).scale(0.3);
    let out = run_direct(&space, &e, &cfg).unwrap();
    let exact = semigroup(space.basis(), cfg.horizon, &e, Generator::Lambda).unwrap();
    assert!((out.trajectory.last().unwrap() - &exact).l2_norm() < 1e-13);
}

#[test]
fn tiny_data_follows_the_linear_decay_bound() {
    let cfg = small_config();
    let space = cfg.space().unwrap();
    let th = normalized(&space, random_field(&space, 2, 1.0), 1e-6);
    let out = run_direct(&space, &th, &cfg).unwrap();
    let j01 = space.basis().lambda_min();
    for (t, s) in out.trajectory.times().iter().zip(out.trajectory.states()) {
        assert!(s.l2_norm() <= (-j01 * t).exp() * th.l2_norm() * (1.0 + 1e-6));
    }
}

#[test]
fn linear_and_viscous_runs_match_their_semigroups() {
    let cfg = SolverConfig { epsilon: 1e-2, ..small_config() };
    let space = cfg.space().unwrap();
    let th = random_field(&space, 3, 0.0);
    let out = run_regularized(&space, &th, &cfg, Drive::Linear).unwrap();
    let r = duhamel_residual(&space, &out.trajectory, cfg.epsilon, Drive::Linear).unwrap();
    assert!(r <= 1e-10 * th.l2_norm(), "{r}");
    let exact = semigroup(space.basis(), cfg.horizon, &th, Generator::Viscous { epsilon: 1e-2 }).unwrap();
    assert!((out.trajectory.last().unwrap() - &exact).l2_norm() < 1e-12 * th.l2_norm());
}

#[test]
fn second_order_convergence_and_duhamel_consistency() {
    let base = SolverConfig { horizon: 0.1, cadence: 1000, ..small_config() };
    let space = base.space().unwrap();
    let th = normalized(&space, random_field(&space, 4, 1.0), 1.0);
    let mut finals = Vec::new();
    let mut residuals = Vec::new();
    for dt in [4e-3, 2e-3, 1e-3] {
        let cfg = SolverConfig { dt, ..base.clone() };
        let out = run_direct(&space, &th, &cfg).unwrap();
        residuals.push(duhamel_residual(&space, &out.trajectory, 0.0, Drive::SelfAdvect).unwrap());
        finals.push(out.trajectory.last().unwrap().clone());
    }
    let slope = ((&finals[0] - &finals[1]).l2_norm() / (&finals[1] - &finals[2]).l2_norm()).log2();
    assert!((slope - 2.0).abs() < 0.2, "slope {slope}");
    let ratio = residuals[0] / residuals[1];
    assert!((ratio - 4.0).abs() < 0.6, "residual ratio {ratio}");
}

#[test]
fn energy_identity_and_maximum_principle() {
    let cfg = SolverConfig { dt: 2e-3, ..small_config() };
    let space = cfg.space().unwrap();
    let th = normalized(&space, random_field(&space, 5, 2.0), 1.0);
    let d = run_direct(&space, &th, &cfg).unwrap().diagnostics;
    assert!(d.energy_defect.iter().all(|e| e.abs() < 1e-6));
    assert!(d.sup.windows(2).all(|w| w[1] <= w[0] + 1e-8 * cfg.cadence as f64));
    assert!(d.l2.windows(2).all(|w| w[1] <= w[0]));
    assert!(d.besov1_integral.windows(2).all(|w| w[1] >= w[0]));
}

#[test]
fn viscous_solutions_approach_the_inviscid_one() {
    let cfg = SolverConfig { cadence: 1000, ..small_config() };
    let space = cfg.space().unwrap();
    let th = normalized(&space, random_field(&space, 6, 1.0), 1.0);
    let direct = run_direct(&space, &th, &cfg).unwrap().trajectory;
    let mut prev = f64::INFINITY;
    for eps in [4e-2, 2e-2, 1e-2] {
        let c = SolverConfig { epsilon: eps, ..cfg.clone() };
        let out = run_regularized(&space, &th, &c, Drive::SelfAdvect).unwrap().trajectory;
        let gap = (out.last().unwrap() - direct.last().unwrap()).l2_norm();
        assert!(gap < prev);
        prev = gap;
    }
}

#[test]
fn picard_iterates_contract_and_reach_the_direct_solution() {
    let cfg = SolverConfig { cadence: 2, ..small_config() };
    let space = cfg.space().unwrap();
    let banded = low_pass(space.basis(), 2, &random_field(&space, 7, 0.0));
    let th = normalized(&space, banded, 1e-2);
    assert_eq!(low_pass(space.basis(), 3, &th), th);
    let out = picard_sequence(&space, &th, &cfg, 6).unwrap();
    assert!(out.contracts(0.6, 3), "{:?}", out.ratios());
    let direct = run_direct(&space, &th, &cfg).unwrap().trajectory;
    assert!((direct.last().unwrap() - out.last.last().unwrap()).l2_norm() < 1e-4);

    let zero = picard_sequence(&space, &space.zeros(), &cfg, 4).unwrap();
    assert!(zero.iterations.iter().all(|s| s.distance.unwrap_or(0.0) == 0.0));
    assert!(picard_sequence(&space, &th, &cfg, 1).is_err());
}

#[test]
fn guards_fire() {
    let cfg = SolverConfig { dt: 0.1, horizon: 0.2, ..small_config() };
    let space = cfg.space().unwrap();
    let th = normalized(&space, random_field(&space, 8, 0.0), 10.0);
    assert!(matches!(run_direct(&space, &th, &cfg), Err(Error::Cfl { .. })));

    let cfg = small_config();
    let mut bad = Trajectory::default();
    let mut nan = space.zeros();
    nan.coeffs_mut()[3].re = f64::NAN;
    bad.push(0.0, nan.clone());
    bad.push(cfg.horizon, nan);
    let th = random_field(&space, 9, 1.0);
    match run_regularized(&space, &th, &cfg, Drive::Frozen(&bad)) {
        Err(Error::Aborted { partial, .. }) => assert_eq!(partial.len(), 1),
        other => panic!("expected abort, got {other:?}"),
    }
    assert!(SolverConfig { dt: -1.0, ..cfg }.validate().is_err());
}
