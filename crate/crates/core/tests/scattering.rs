mod common;

use std::sync::OnceLock;

use quadforge::bessel::{first_zero, BesselOrder};
use quadforge::field::{laplacian, Grid, ScalarField};
use quadforge::minimizer::{bernoulli_residual, minimize, MinimizeResult, RadialGridProblem};
use quadforge::scattering::{
    build_contrast, incident_field, jump_relation_check, nonradiating_residual,
};
use quadforge::Error;

use common::acceptance_params;

struct Run {
    problem: RadialGridProblem,
    result: MinimizeResult,
    u0: ScalarField,
    k: f64,
    g: Vec<f64>,
}

/// The radial problem with g = 0.2 beyond r1, minimized once at m = 257.
fn run() -> &'static Run {
    static RUN: OnceLock<Run> = OnceLock::new();
    RUN.get_or_init(|| {
        let params = acceptance_params(0.2);
        let problem = RadialGridProblem::new(&params, 257).unwrap();
        let result = minimize(&problem.spec).unwrap();
        let k = params.k();
        let u0 = incident_field(2, k, *problem.spec.grid()).unwrap();
        let g = result
            .boundary
            .segments
            .iter()
            .map(|s| params.g.eval(s.midpoint[0].hypot(s.midpoint[1])))
            .collect();
        Run {
            problem,
            result,
            u0,
            k,
            g,
        }
    })
}

#[test]
fn incident_field_is_a_discrete_helmholtz_solution() {
    let k = 2.0;
    let errors: Vec<f64> = [65, 129, 257]
        .iter()
        .map(|&m| {
            let grid = Grid::new(1.0, m).unwrap();
            let u0 = incident_field(2, k, grid).unwrap();
            let lap = laplacian(&u0);
            (0..grid.len())
                .filter(|&i| !grid.on_box_edge(i))
                .map(|i| (lap.values()[i] + k * k * u0.values()[i]).abs())
                .fold(0.0, f64::max)
        })
        .collect();
    for w in errors.windows(2) {
        assert!((w[0] / w[1]).log2() >= 1.9, "{errors:?}");
    }
    for n in [2, 3] {
        let j = first_zero(BesselOrder::inner(n).unwrap());
        let u0 = incident_field(n, 0.9 * j, Grid::new(1.0, 65).unwrap()).unwrap();
        let grid = *u0.grid();
        let ball = grid.ball_mask();
        assert!((0..grid.len())
            .filter(|&i| !ball[i])
            .all(|i| u0.values()[i] > 0.0));
    }
}

#[test]
fn contrast_invariants_hold_on_the_radial_problem() {
    let r = run();
    let grid = *r.problem.spec.grid();
    let cr = build_contrast(
        &r.result,
        &r.problem.h,
        &r.problem.mu,
        r.k,
        &r.u0,
        10.0 * grid.h(),
    )
    .unwrap();
    let inv = cr.invariants();
    assert!(inv.all(), "{inv:?}");
    assert!(cr.band.count() > 0);
    for i in (0..grid.len()).filter(|&i| cr.band.contains(i)) {
        let defect = cr.rho.values()[i] * cr.v0.values()[i] + r.problem.h.values()[i];
        assert!(defect.abs() < 1e-10);
    }
    for i in (0..grid.len()).filter(|&i| !cr.domain.contains(i)) {
        assert_eq!(cr.v.values()[i], r.u0.values()[i]);
        assert_eq!(cr.rho.values()[i], 0.0);
    }
    let stats = cr.band_stats();
    assert!(stats.min_v > 0.0 && stats.min_band_ratio > 0.0);
}

#[test]
fn gluing_residual_vanishes_inside_and_carries_g_at_the_boundary() {
    let r = run();
    let grid = *r.problem.spec.grid();
    let delta = 0.1;
    let cr = build_contrast(&r.result, &r.problem.h, &r.problem.mu, r.k, &r.u0, delta).unwrap();
    let residual = cr.gluing_residual(r.k);
    let scale = cr.rho.max_abs() * cr.v.max_abs();
    let mut surface = 0.0;
    for i in 0..grid.len() {
        let d = r.result.boundary.distance(grid.point(i));
        if cr.domain.contains(i) && d > delta / 3.0 + 2.0 * grid.h() {
            assert!(residual.values()[i].abs() < 1e-9 * scale);
        }
        if d < delta / 3.0 {
            surface += residual.values()[i] * grid.h() * grid.h();
        }
    }
    let total_g: f64 = r
        .result
        .boundary
        .segments
        .iter()
        .zip(&r.g)
        .map(|(s, g)| g * s.length)
        .sum();
    // The five-point flux through a staircase overshoots the curve length.
    assert!(
        surface > total_g && surface < 1.2 * total_g,
        "{surface} vs {total_g}"
    );
}

#[test]
fn nonradiating_residual_and_its_controls() {
    let r = run();
    let cr = build_contrast(&r.result, &r.problem.h, &r.problem.mu, r.k, &r.u0, 0.1).unwrap();
    let residual = nonradiating_residual(&cr, &r.result.boundary, &r.g, r.k, 64).unwrap();
    assert!(residual < 0.05, "{residual}");
    let mut empty = cr.clone();
    empty.rho = cr.rho.map(|_| 0.0);
    empty.v = cr.v.map(|_| 0.0);
    let zero_g = vec![0.0; r.g.len()];
    assert_eq!(
        nonradiating_residual(&empty, &r.result.boundary, &zero_g, r.k, 16).unwrap(),
        0.0
    );
}

#[test]
fn jump_relation_matches_bernoulli() {
    let r = run();
    let jump = jump_relation_check(&r.result.u, &r.result.boundary, &r.g).unwrap();
    let bern = bernoulli_residual(&r.problem.spec, &r.result).unwrap();
    assert!((jump.relative - bern.relative).abs() < 1e-12);
    assert!((jump.mean_abs - bern.mean_abs).abs() < 1e-12);
    let zero_g = vec![0.0; r.g.len()];
    let smooth = jump_relation_check(&r.u0, &r.result.boundary, &zero_g).unwrap();
    assert!(smooth.mean_abs < 10.0 * r.problem.spec.grid().h() * r.u0.max_abs());
    assert!(jump_relation_check(&r.result.u, &r.result.boundary, &zero_g[1..]).is_err());
}

#[test]
fn preconditions_are_enforced() {
    let r = run();
    let grid = *r.problem.spec.grid();
    let negative = r.u0.map(|v| -v);
    let err =
        build_contrast(&r.result, &r.problem.h, &r.problem.mu, r.k, &negative, 0.1).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)), "{err}");
    let err = build_contrast(
        &r.result,
        &r.problem.h,
        &r.problem.mu,
        r.k,
        &r.u0,
        3.0 * grid.h(),
    )
    .unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
    let zero_h = r.problem.h.map(|_| 0.0);
    let err = build_contrast(&r.result, &zero_h, &r.problem.mu, r.k, &r.u0, 0.1).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
    let wide_mu = r.problem.h.clone();
    let err = build_contrast(&r.result, &r.problem.h, &wide_mu, r.k, &r.u0, 0.1).unwrap_err();
    assert!(matches!(err, Error::Precondition(_)));
    let other = ScalarField::zeros(Grid::new(1.0, 65).unwrap());
    assert!(matches!(
        build_contrast(&r.result, &other, &r.problem.mu, r.k, &r.u0, 0.1),
        Err(Error::GridMismatch)
    ));
}
