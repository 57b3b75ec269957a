//! Comparison principle and λ-continuation.

use serde::Serialize;

use super::{energy, minimize_with, EnergySpec, MinimizeOptions, MinimizeResult};
use crate::field::ScalarField;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ComparisonEnergies {
    pub j1_min: f64,
    pub j2_max: f64,
    pub j1_u1: f64,
    pub j2_u2: f64,
}

impl ComparisonEnergies {
    /// J1(min) + J2(max) ≤ J1(u1) + J2(u2) + tolerance.
    pub fn holds(&self, tolerance: f64) -> bool {
        self.j1_min + self.j2_max <= self.j1_u1 + self.j2_u2 + tolerance
    }
}

/// Energies of the nodewise min and max against the originals.
///
/// Both specs are evaluated with the larger of their two positivity
/// thresholds, so the indicator terms compare the same node sets.
pub fn compare_energies(
    spec1: &EnergySpec,
    spec2: &EnergySpec,
    u1: &ScalarField,
    u2: &ScalarField,
) -> Result<ComparisonEnergies> {
    spec1.f().same_grid(spec2.f())?;
    u1.same_grid(u2)?;
    spec1.f().same_grid(u1)?;
    if spec1.lambda() > spec2.lambda() {
        return Err(Error::Precondition(format!(
            "lambda1 = {} must not exceed lambda2 = {}",
            spec1.lambda(),
            spec2.lambda()
        )));
    }
    let first_violation = |a: &ScalarField, b: &ScalarField| {
        a.values().iter().zip(b.values()).position(|(x, y)| x > y)
    };
    if let Some(i) = first_violation(spec1.f(), spec2.f()) {
        return Err(Error::Precondition(format!("f1 <= f2 fails at node {i}")));
    }
    if let Some(i) = first_violation(spec2.g(), spec1.g()) {
        return Err(Error::Precondition(format!("g1 >= g2 fails at node {i}")));
    }
    let tau = spec1.tau().max(spec2.tau());
    let (s1, s2) = (spec1.with_tau(tau), spec2.with_tau(tau));
    let lo: Vec<f64> = u1
        .values()
        .iter()
        .zip(u2.values())
        .map(|(a, b)| a.min(*b))
        .collect();
    let hi: Vec<f64> = u1
        .values()
        .iter()
        .zip(u2.values())
        .map(|(a, b)| a.max(*b))
        .collect();
    Ok(ComparisonEnergies {
        j1_min: energy(&s1, &u1.with_values(lo)?)?,
        j2_max: energy(&s2, &u1.with_values(hi)?)?,
        j1_u1: energy(&s1, u1)?,
        j2_u2: energy(&s2, u2)?,
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SweepPoint {
    pub lambda: f64,
    pub l2_norm: f64,
    pub energy: f64,
}

#[derive(Clone, Debug)]
pub struct LambdaSweep {
    pub points: Vec<SweepPoint>,
    pub results: Vec<MinimizeResult>,
}

/// Minimizes for each λ in increasing order, starting each run from
/// max(previous minimizer, barrier).
pub fn lambda_sweep(
    base: &EnergySpec,
    lambdas: &[f64],
    options: &MinimizeOptions,
) -> Result<LambdaSweep> {
    if lambdas.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidParams(
            "lambdas must be strictly increasing".into(),
        ));
    }
    let mut points = Vec::with_capacity(lambdas.len());
    let mut results: Vec<MinimizeResult> = Vec::with_capacity(lambdas.len());
    for &lambda in lambdas {
        let spec = base.with_lambda(lambda)?;
        let barrier = spec.barrier()?;
        let initial = match results.last() {
            Some(prev) => {
                let env = prev
                    .u
                    .values()
                    .iter()
                    .zip(barrier.values())
                    .map(|(a, b)| a.max(*b))
                    .collect();
                barrier.with_values(env)?
            }
            None => barrier,
        };
        let opts = MinimizeOptions {
            initial: Some(initial),
            ..options.clone()
        };
        let result = minimize_with(&spec, &opts)?;
        points.push(SweepPoint {
            lambda,
            l2_norm: result.l2_norm(),
            energy: result.energy,
        });
        results.push(result);
    }
    Ok(LambdaSweep { points, results })
}
