mod common;

use proptest::prelude::*;
use quadforge::field::{extract_boundary, Grid, ScalarField};
use quadforge::minimizer::{
    bernoulli_residual, coercivity_witness, compare_energies, el_residual, energy, lambda_sweep,
    minimize, minimize_with, positivity_density, EnergySpec, MinimizeOptions, MinimizeResult,
    RadialGridProblem, SweepOrder,
};
use quadforge::radial::radial_solve;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{acceptance_params, ordered_pair, random_nonneg};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn comparison_inequality_for_arbitrary_fields(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s1, s2) = ordered_pair(&mut rng);
        let u1 = random_nonneg(*s1.grid(), &mut rng, 1.0);
        let u2 = random_nonneg(*s1.grid(), &mut rng, 1.0);
        let e = compare_energies(&s1, &s2, &u1, &u2).unwrap();
        prop_assert!(e.holds(1e-10), "{:?}", e);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn comparison_inequality_for_minimizers(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (s1, s2) = ordered_pair(&mut rng);
        let (u1, u2) = (minimize(&s1).unwrap().u, minimize(&s2).unwrap().u);
        let e = compare_energies(&s1, &s2, &u1, &u2).unwrap();
        prop_assert!(e.holds(1e-10), "{:?}", e);
    }

    #[test]
    fn minimizers_respect_the_barrier_and_descend(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (spec, _) = ordered_pair(&mut rng);
        let result = minimize(&spec).unwrap();
        let barrier = spec.barrier().unwrap();
        for (u, v) in result.u.values().iter().zip(barrier.values()) {
            prop_assert!(*u >= 0.0 && *u <= v + 1e-10);
        }
        prop_assert!(result.max_update_increase <= 1e-12 * (1.0 + result.energy.abs()));
        prop_assert!(result.log.windows(2).all(|w| w[1].energy <= w[0].energy + 1e-12 * w[0].energy.abs()));
        prop_assert!(coercivity_witness(&spec, &result.u).unwrap().holds());
        prop_assert!(result.energy <= 0.0);
    }
}

#[test]
fn comparison_degenerate_cases() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (s1, s2) = ordered_pair(&mut rng);
    let u = random_nonneg(*s1.grid(), &mut rng, 1.0);
    let e = compare_energies(&s1, &s2, &u, &u).unwrap();
    assert_eq!(e.j1_min + e.j2_max, e.j1_u1 + e.j2_u2);
    let bigger = u.map(|v| v + 0.5);
    let e = compare_energies(&s1, &s2, &u, &bigger).unwrap();
    assert_eq!((e.j1_min, e.j2_max), (e.j1_u1, e.j2_u2));
    assert!(compare_energies(&s2, &s1, &u, &u).is_err());
}

#[test]
fn energy_examples() {
    let grid = Grid::new(1.0, 33).unwrap();
    let zero = ScalarField::zeros(grid);
    let spec = EnergySpec::new(1.0, zero.map(|_| 1.0), zero.map(|_| 0.5)).unwrap();
    assert_eq!(energy(&spec, &zero).unwrap(), 0.0);
    let flat = EnergySpec::new(0.0, zero.clone(), zero.clone()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let u = random_nonneg(grid, &mut rng, 1.0);
    assert!(energy(&flat, &u).unwrap() > 0.0);
    assert!(EnergySpec::new(100.0, zero.clone(), zero.clone()).is_err());
    assert!(EnergySpec::new(1.0, zero.clone(), zero.map(|_| -1.0)).is_err());
}

#[test]
fn nonpositive_source_gives_zero() {
    let grid = Grid::new(1.0, 65).unwrap();
    let f = ScalarField::from_fn(grid, |x, _| -1.0 - x * x);
    let spec = EnergySpec::new(2.0, f, ScalarField::zeros(grid)).unwrap();
    let result = minimize(&spec).unwrap();
    assert!(result.u.values().iter().all(|&v| v == 0.0));
    assert_eq!(result.energy, 0.0);
    assert_eq!(el_residual(&spec, &result).unwrap(), 0.0);
}

#[test]
fn heavy_surface_cost_gives_zero() {
    let grid = Grid::new(1.0, 65).unwrap();
    let f = ScalarField::disk_coverage(grid, [0.0, 0.0], 0.2).map(|c| 0.01 * c - 0.001);
    let spec = EnergySpec::new(1.0, f, ScalarField::from_fn(grid, |_, _| 5.0)).unwrap();
    let result = minimize(&spec).unwrap();
    assert!(result.u.values().iter().all(|&v| v == 0.0));
}

#[test]
fn radial_problem_matches_oracle_on_a_coarse_grid() {
    let params = acceptance_params(0.0);
    let sol = radial_solve(&params).unwrap();
    let problem = RadialGridProblem::new(&params, 129).unwrap();
    let result = minimize(&problem.spec).unwrap();
    let h = problem.spec.grid().h();
    assert!((result.positivity_radius().unwrap() - sol.rho).abs() < 2.0 * h);
    assert!((result.energy - sol.energy()).abs() < 0.02 * sol.energy().abs());
    let bern = bernoulli_residual(&problem.spec, &result).unwrap();
    assert!(bern.max_abs < 10.0 * h * problem.spec.f().max_abs());
    assert!(el_residual(&problem.spec, &result).unwrap() < 5e-2);
    assert!(result.boundary.closed);
    let density = positivity_density(&problem.spec, &result, 0.0);
    assert!(density.nodes > 0);
}

#[test]
fn sampled_oracle_satisfies_bernoulli() {
    let params = acceptance_params(0.2);
    let sol = radial_solve(&params).unwrap();
    let problem = RadialGridProblem::new(&params, 513).unwrap();
    let spec = &problem.spec;
    let u = ScalarField::from_fn(*spec.grid(), |x, y| sol.u(x.hypot(y)));
    let mask = u.threshold_set(spec.tau());
    let result = MinimizeResult {
        energy: energy(spec, &u).unwrap(),
        boundary: extract_boundary(&mask).unwrap(),
        positivity_mask: mask,
        barrier: spec.barrier().unwrap(),
        u,
        sweeps: 0,
        log: Vec::new(),
        fixed_point_defect: 0.0,
        max_update_increase: 0.0,
    };
    let report = bernoulli_residual(spec, &result).unwrap();
    assert!(report.relative < 0.02, "{report:?}");
    assert!((result.energy - sol.energy()).abs() < 0.01 * sol.energy().abs());
}

#[test]
fn single_lambda_sweep_equals_minimize() {
    let params = acceptance_params(0.0);
    let problem = RadialGridProblem::new(&params, 65).unwrap();
    let direct = minimize(&problem.spec).unwrap();
    let sweep = lambda_sweep(&problem.spec, &[params.lambda], &MinimizeOptions::default()).unwrap();
    assert_eq!(sweep.points[0].energy, direct.energy);
    assert_eq!(sweep.results[0].u.values(), direct.u.values());
    assert!(lambda_sweep(&problem.spec, &[2.0, 1.0], &MinimizeOptions::default()).is_err());
}

#[test]
fn sweep_is_monotone_in_lambda() {
    let params = acceptance_params(0.0);
    let problem = RadialGridProblem::new(&params, 65).unwrap();
    let lambdas = [0.5, 1.0, 2.0, 3.0, 4.0];
    let sweep = lambda_sweep(&problem.spec, &lambdas, &MinimizeOptions::default()).unwrap();
    for (w, r) in sweep.points.windows(2).zip(sweep.results.windows(2)) {
        assert!(w[1].l2_norm >= w[0].l2_norm - 1e-8);
        assert!(w[1].energy <= w[0].energy);
        let sup = r[0].u.max_abs();
        assert!(r[1]
            .u
            .values()
            .iter()
            .zip(r[0].u.values())
            .all(|(b, a)| *b >= a - 1e-6 * sup));
    }
}

#[test]
fn orders_reach_the_same_minimizer() {
    let params = acceptance_params(0.0);
    let problem = RadialGridProblem::new(&params, 65).unwrap();
    let symmetric = minimize(&problem.spec).unwrap();
    let options = MinimizeOptions {
        order: SweepOrder::RedBlack,
        ..MinimizeOptions::default()
    };
    let red_black = minimize_with(&problem.spec, &options).unwrap();
    assert!((symmetric.energy - red_black.energy).abs() < 1e-6 * symmetric.energy.abs());
    let again = minimize_with(&problem.spec, &options).unwrap();
    assert_eq!(again.u.values(), red_black.u.values());
}

#[test]
fn sweep_cap_reports_non_convergence() {
    let params = acceptance_params(0.0);
    let problem = RadialGridProblem::new(&params, 65).unwrap();
    let options = MinimizeOptions {
        max_sweeps: 3,
        ..MinimizeOptions::default()
    };
    let err = minimize_with(&problem.spec, &options).unwrap_err();
    assert!(err.is_non_convergence());
}
