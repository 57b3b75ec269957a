#![allow(dead_code)]

use std::f64::consts::PI;

use quadforge::field::{Grid, ScalarField};
use quadforge::minimizer::{discrete_tone, EnergySpec};
use quadforge::radial::{GProfile, RadialParams};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// J_ν by its power series, with Γ(ν+1) from the half-integer recurrence.
pub fn series_j(twice_nu: u32, x: f64) -> f64 {
    let nu = twice_nu as f64 / 2.0;
    let mut gamma = if twice_nu % 2 == 0 {
        1.0
    } else {
        PI.sqrt() / 2.0
    };
    let mut g = if twice_nu % 2 == 0 { 1.0 } else { 1.5 };
    while g <= nu {
        gamma *= g;
        g += 1.0;
    }
    let half = x / 2.0;
    let mut term = half.powf(nu) / gamma;
    let mut sum = term;
    for k in 1..200 {
        let k = k as f64;
        term *= -half * half / (k * (k + nu));
        sum += term;
        if term.abs() < 1e-18 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if (f(mid) > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The planar problem R = 1, λ = 2, a = 10, b = 1, r1 = 0.25.
pub fn acceptance_params(g: f64) -> RadialParams {
    let profile = if g == 0.0 {
        GProfile::zero()
    } else {
        GProfile::step(g, 0.25)
    };
    RadialParams::new(2, 2.0, 10.0, 1.0, 0.25, 1.0, profile).unwrap()
}

/// Composite Gauss–Legendre (5 points) on [a, b] with `panels` panels.
pub fn gauss(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    const X: [f64; 5] = [
        0.0,
        -0.538_469_310_105_683,
        0.538_469_310_105_683,
        -0.906_179_845_938_664,
        0.906_179_845_938_664,
    ];
    const W: [f64; 5] = [
        0.568_888_888_888_889,
        0.478_628_670_499_366,
        0.478_628_670_499_366,
        0.236_926_885_056_189,
        0.236_926_885_056_189,
    ];
    let h = (b - a) / panels as f64;
    (0..panels)
        .map(|p| {
            let mid = a + (p as f64 + 0.5) * h;
            X.iter()
                .zip(W)
                .map(|(x, w)| w * f(mid + 0.5 * h * x))
                .sum::<f64>()
                * 0.5
                * h
        })
        .sum()
}

pub fn random_nonneg(grid: Grid, rng: &mut ChaCha8Rng, scale: f64) -> ScalarField {
    let zero = ScalarField::zeros(grid);
    let values = (0..grid.len())
        .map(|i| {
            if zero.is_masked(i) {
                0.0
            } else {
                scale * rng.gen::<f64>()
            }
        })
        .collect();
    zero.with_values(values).unwrap()
}

/// Two specs with f1 ≤ f2, g1 ≥ g2, λ1 ≤ λ2.
pub fn ordered_pair(rng: &mut ChaCha8Rng) -> (EnergySpec, EnergySpec) {
    let grid = Grid::new(1.0, 33).unwrap();
    let r1 = rng.gen_range(0.15..0.4);
    let (a, b) = (rng.gen_range(3.0..20.0), rng.gen_range(0.2..2.0));
    let cov = ScalarField::disk_coverage(
        grid,
        [rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2)],
        r1,
    );
    let f1 = cov.map(|c| a * c - b);
    let bump = random_nonneg(grid, rng, 1.0);
    let f2 = f1
        .with_values(
            f1.values()
                .iter()
                .zip(bump.values())
                .map(|(x, y)| x + y)
                .collect(),
        )
        .unwrap();
    let g2 = random_nonneg(grid, rng, 0.3);
    let extra = random_nonneg(grid, rng, 0.2);
    let g1 = g2
        .with_values(
            g2.values()
                .iter()
                .zip(extra.values())
                .map(|(x, y)| x + y)
                .collect(),
        )
        .unwrap();
    let tone = discrete_tone(&grid).unwrap();
    let l1 = rng.gen_range(0.0..0.8) * tone;
    let l2 = rng.gen_range(l1..0.85 * tone);
    (
        EnergySpec::new(l1, f1, g1).unwrap(),
        EnergySpec::new(l2, f2, g2).unwrap(),
    )
}
