use bargain_core::nash::{nash_set, rho_of_kappa, tau_of_kappa, verify_nash, x1_upper_of, x2_lower_of, NashGrid, StubDirection};
use bargain_core::solver::constrained_threshold;
use bargain_core::{Endowment, PayoffCurve, Strategy};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LOG: PayoffCurve = PayoffCurve::ShiftedLog;

fn w10() -> Endowment {
    Endowment::new(10.0).unwrap()
}

#[test]
fn bound_examples() {
    let w = w10();
    assert_eq!(tau_of_kappa(0.0, LOG, w).unwrap(), 0.0);
    assert_eq!(tau_of_kappa(1.0, LOG, w).unwrap(), 5.0);
    assert!((tau_of_kappa(0.5, LOG, w).unwrap() - 3.0).abs() < 1e-9);
    // Linear closed form of the corrected upper bound.
    let (a, k) = (0.7, 0.2);
    let lin = x1_upper_of(k, a, PayoffCurve::Linear, w).unwrap();
    assert!((lin - 10.0 * (1.0 + a - k) / (1.0 + 2.0 * a - k)).abs() < 1e-9);
    let x = x1_upper_of(0.19, 0.28, LOG, w).unwrap();
    let residual = 1.09 * (11.0 - x).ln() - 0.28 * (1.0 + x).ln();
    assert!(residual.abs() < 1e-10, "{residual}");
}

#[test]
fn lower_bound_matches_solver_threshold() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..200 {
        let (k, a) = (rng.random_range(0.0..0.99), rng.random_range(-1.0..3.0));
        let w = Endowment::new(rng.random_range(1.0..60.0)).unwrap();
        for curve in [LOG, PayoffCurve::Linear, PayoffCurve::Crra { rho: 0.3 }] {
            let lhs = x2_lower_of(k, a, curve, w).unwrap();
            let rhs = constrained_threshold(k, a, curve, w).unwrap();
            assert!((lhs - rhs).abs() < 1e-9, "{k} {a} {curve:?}");
        }
    }
}

#[test]
fn equal_split_and_bound_counterexamples() {
    let w = w10();
    let grid = NashGrid::default_for(w);
    assert!(verify_nash(Strategy::new(5.0, 5.0), 0.5, 0.5, LOG, w, &grid).unwrap().is_equilibrium);
    let x2l = x2_lower_of(0.2, 1.5, LOG, w).unwrap();
    let low = verify_nash(Strategy::new(0.5 * x2l, 0.5 * x2l), 0.2, 1.5, LOG, w, &grid).unwrap();
    assert!(!low.is_equilibrium);
    assert!(low.best_deviation.x2 > 0.5 * x2l);
    let x1u = x1_upper_of(0.2, 1.5, LOG, w).unwrap();
    let high = 0.5 * (x1u + 10.0);
    assert!(!verify_nash(Strategy::new(high, high), 0.2, 1.5, LOG, w, &grid).unwrap().is_equilibrium);
}

#[test]
fn bound_properties_on_samples() {
    let w = w10();
    let grid = NashGrid::new(w, 0.05).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut below = 0;
    let mut above = 0;
    while below < 200 || above < 200 {
        let (k, a) = (rng.random_range(0.05..0.95), rng.random_range(0.1..3.0));
        let x2l = x2_lower_of(k, a, LOG, w).unwrap();
        let x1u = x1_upper_of(k, a, LOG, w).unwrap();
        if below < 200 && x2l > 2.0 * grid.step() {
            let x1 = rng.random_range(0.0..x2l - grid.step());
            let x2 = rng.random_range(0.0..10.0);
            assert!(!verify_nash(Strategy::new(x1, x2), k, a, LOG, w, &grid).unwrap().is_equilibrium, "below threshold {k} {a} {x1} {x2}");
            below += 1;
        }
        if above < 200 && x1u < 10.0 - 2.0 * grid.step() {
            let x = rng.random_range(x1u + grid.step()..10.0);
            assert!(!verify_nash(Strategy::new(x, x), k, a, LOG, w, &grid).unwrap().is_equilibrium, "above upper bound {k} {a} {x}");
            above += 1;
        }
    }
}

#[test]
fn rho_is_nonincreasing_and_saturates() {
    let w = w10();
    let grid = NashGrid::new(w, 0.025).unwrap();
    let rhos: Vec<f64> = (1..=20).map(|i| rho_of_kappa(i as f64 / 20.0, LOG, w, &grid).unwrap().unwrap()).collect();
    assert!(rhos.windows(2).all(|p| p[1] <= p[0]), "{rhos:?}");
    assert_eq!(*rhos.last().unwrap(), 5.0);
    let r = rhos[9];
    assert!(verify_nash(Strategy::new(r, r), 0.5, 0.0, LOG, w, &grid).unwrap().is_equilibrium);
    let beyond = r + grid.step();
    assert!(!verify_nash(Strategy::new(beyond, beyond), 0.5, 0.0, LOG, w, &grid).unwrap().is_equilibrium);
}

#[test]
fn segment_is_verified_and_tight() {
    let w = w10();
    let grid = NashGrid::new(w, 0.025).unwrap();
    for (k, a) in [(0.5, 0.5), (0.3, 1.0), (0.8, 0.2), (0.2, 0.1)] {
        let set = nash_set(k, a, LOG, w, &grid).unwrap();
        let (lo, hi) = set.segment.unwrap();
        assert!(set.tau <= 5.0 && 5.0 <= set.x1_upper);
        for x in grid.points().filter(|&x| x >= lo - 1e-12 && x <= hi + 1e-12) {
            assert!(verify_nash(Strategy::new(x, x), k, a, LOG, w, &grid).unwrap().is_equilibrium, "{k} {a} {x}");
        }
        for x in [lo - 0.5 * grid.step(), hi + grid.step()] {
            if (0.0..=10.0).contains(&x) && x > 0.0 {
                assert!(!verify_nash(Strategy::new(x, x), k, a, LOG, w, &grid).unwrap().is_equilibrium, "{k} {a} {x}");
            }
        }
    }
}

#[test]
fn alpha_zero_stub_lies_below_the_offer() {
    let w = w10();
    let grid = NashGrid::new(w, 0.05).unwrap();
    let set = nash_set(0.5, 0.0, LOG, w, &grid).unwrap();
    let stub = set.asymmetric_stub.unwrap();
    assert_eq!(stub.direction, StubDirection::Below);
    assert!((stub.offer - 3.0).abs() < 1e-9);
}

#[test]
fn set_shrinks_with_alpha_and_kappa() {
    let w = w10();
    let grid = NashGrid::new(w, 0.05).unwrap();
    let lower = |k: f64, a: f64| {
        let s = nash_set(k, a, LOG, w, &grid).unwrap();
        s.x2_lower.max(s.tau)
    };
    assert!(lower(0.3, 0.2) <= lower(0.3, 0.8) && lower(0.3, 0.8) <= lower(0.3, 2.0));
    let rho = |k: f64| nash_set(k, 0.5, LOG, w, &grid).unwrap().rho.unwrap();
    assert!(rho(0.2) >= rho(0.5) && rho(0.5) >= rho(0.9));
}
