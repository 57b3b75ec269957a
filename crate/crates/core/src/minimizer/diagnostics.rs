//! Checks of the Euler–Lagrange equation, the free-boundary condition,
//! coercivity and positivity density on a computed minimizer.

use serde::Serialize;

use super::{EnergySpec, MinimizeResult};
use crate::field::{distance_to_zero_set, laplacian, BoundaryCurve, ScalarField};
use crate::{Error, Result};

/// One-sided normal derivatives at a boundary segment midpoint.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalDerivative {
    /// ∂u/∂ν from the inside (true side of the curve).
    pub interior: f64,
    /// ∂u/∂ν from the outside.
    pub exterior: f64,
}

/// One-sided normal derivatives at every segment midpoint.
///
/// Each side is a quadratic through bilinear samples at distances 2h, 3h, 4h
/// along the normal, differentiated at the midpoint. The samples stay clear of
/// the cells the curve crosses.
pub fn normal_derivatives(u: &ScalarField, curve: &BoundaryCurve) -> Result<Vec<NormalDerivative>> {
    let g = u.grid();
    let h = g.h();
    let limit = g.half_width() - 6.0 * h;
    if let Some(s) = curve
        .segments
        .iter()
        .find(|s| s.midpoint[0].abs() > limit || s.midpoint[1].abs() > limit)
    {
        return Err(Error::Clearance(format!(
            "segment midpoint {:?} lies within 6h of the grid edge",
            s.midpoint
        )));
    }
    Ok(curve
        .segments
        .iter()
        .map(|s| {
            let slope = |sign: f64| {
                let at = |t: f64| {
                    u.sample(
                        s.midpoint[0] + sign * t * h * s.normal[0],
                        s.midpoint[1] + sign * t * h * s.normal[1],
                    )
                };
                (-3.5 * at(2.0) + 6.0 * at(3.0) - 2.5 * at(4.0)) / h
            };
            NormalDerivative {
                interior: -slope(-1.0),
                exterior: slope(1.0),
            }
        })
        .collect())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DeviationReport {
    /// Σ|d − g|·len / Σ g·len; NaN when g vanishes on the whole curve.
    pub relative: f64,
    /// Σ|d − g|·len / Σ len.
    pub mean_abs: f64,
    /// max |d| over segments.
    pub max_abs: f64,
    pub segments: usize,
}

impl DeviationReport {
    pub(crate) fn new(curve: &BoundaryCurve, measured: &[f64], target: &[f64]) -> Self {
        let (mut dev, mut weight, mut length, mut max_abs) = (0.0, 0.0, 0.0, 0.0f64);
        for ((s, &d), &g) in curve.segments.iter().zip(measured).zip(target) {
            dev += (d - g).abs() * s.length;
            weight += g * s.length;
            length += s.length;
            max_abs = max_abs.max(d.abs());
        }
        Self {
            relative: if weight > 0.0 { dev / weight } else { f64::NAN },
            mean_abs: dev / length,
            max_abs,
            segments: curve.segments.len(),
        }
    }
}

/// Compares |∇u| = −∂u/∂ν from the positive side with g on every segment.
pub fn bernoulli_residual(spec: &EnergySpec, result: &MinimizeResult) -> Result<DeviationReport> {
    if result.boundary.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let derivs = normal_derivatives(&result.u, &result.boundary)?;
    let measured: Vec<f64> = derivs.iter().map(|d| -d.interior).collect();
    let target: Vec<f64> = result
        .boundary
        .segments
        .iter()
        .map(|s| spec.g().sample(s.midpoint[0], s.midpoint[1]))
        .collect();
    Ok(DeviationReport::new(&result.boundary, &measured, &target))
}

/// max |Δ_h u + λu + f| / ‖f‖∞ over nodes farther than 3h from {u ≤ τ}.
pub fn el_residual(spec: &EnergySpec, result: &MinimizeResult) -> Result<f64> {
    spec.f().same_grid(&result.u)?;
    let scale = spec.f().max_abs();
    if scale == 0.0 {
        return Ok(0.0);
    }
    let h = spec.grid().h();
    let dist = distance_to_zero_set(&result.u, spec.tau());
    let lap = laplacian(&result.u);
    let (u, f) = (result.u.values(), spec.f().values());
    Ok((0..u.len())
        .filter(|&i| dist.values()[i] > 3.0 * h)
        .map(|i| (lap.values()[i] + spec.lambda() * u[i] + f[i]).abs())
        .fold(0.0, f64::max)
        / scale)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CoercivityWitness {
    pub energy: f64,
    pub bound: f64,
    pub gamma: f64,
}

impl CoercivityWitness {
    pub fn holds(&self) -> bool {
        self.energy >= self.bound
    }
}

/// J_h(u) ≥ (γ/2)‖u‖²_{H¹} − 2|Ω|‖f₊‖²∞/γ with γ = (1 − λ/λ*_h)·λ*_h/(1 + λ*_h).
///
/// The constant follows from ‖∇u‖² ≥ λ*_h‖u‖² and Young's inequality on the
/// source term; it is the discrete analogue of the coercivity estimate.
pub fn coercivity_witness(spec: &EnergySpec, u: &ScalarField) -> Result<CoercivityWitness> {
    let energy = super::energy(spec, u)?;
    let g = spec.grid();
    let (m, h2) = (g.m(), g.h() * g.h());
    let v = u.values();
    let mut grad = 0.0;
    let mut mass = 0.0;
    for idx in 0..v.len() {
        if idx % m + 1 < m {
            grad += (v[idx + 1] - v[idx]).powi(2);
        }
        if idx / m + 1 < m {
            grad += (v[idx + m] - v[idx]).powi(2);
        }
        mass += v[idx] * v[idx] * h2;
    }
    let tone = spec.discrete_tone();
    let gamma = (1.0 - spec.lambda() / tone) * tone / (1.0 + tone);
    let area = u.mask().iter().filter(|&&masked| !masked).count() as f64 * h2;
    let f_plus = spec.f().values().iter().fold(0.0f64, |a, &f| a.max(f));
    Ok(CoercivityWitness {
        energy,
        bound: 0.5 * gamma * (grad + mass) - 2.0 * area * f_plus * f_plus / gamma,
        gamma,
    })
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct DensityReport {
    pub nodes: usize,
    pub min_fraction: f64,
    pub max_fraction: f64,
    /// All fractions lie in (0.01, 0.99).
    pub within_bounds: bool,
}

/// Fraction of positive nodes in radius-8h balls around positive nodes that
/// touch the zero set, restricted to nodes where g ≥ g_min.
pub fn positivity_density(spec: &EnergySpec, result: &MinimizeResult, g_min: f64) -> DensityReport {
    let grid = spec.grid();
    let m = grid.m() as isize;
    let mask = &result.positivity_mask;
    let reach = 8isize;
    let (mut lo, mut hi, mut nodes) = (1.0f64, 0.0f64, 0usize);
    for idx in 0..grid.len() {
        let (i, j) = ((idx % grid.m()) as isize, (idx / grid.m()) as isize);
        if !mask.contains(idx)
            || spec.g().values()[idx] < g_min
            || i == 0
            || j == 0
            || i == m - 1
            || j == m - 1
        {
            continue;
        }
        let touches = [idx - 1, idx + 1, idx - grid.m(), idx + grid.m()]
            .iter()
            .any(|&n| !mask.contains(n));
        if !touches {
            continue;
        }
        let (mut inside, mut total) = (0usize, 0usize);
        for dj in -reach..=reach {
            for di in -reach..=reach {
                let (a, b) = (i + di, j + dj);
                if di * di + dj * dj > reach * reach || a < 0 || b < 0 || a >= m || b >= m {
                    continue;
                }
                total += 1;
                inside += mask.contains((b * m + a) as usize) as usize;
            }
        }
        let frac = inside as f64 / total as f64;
        lo = lo.min(frac);
        hi = hi.max(frac);
        nodes += 1;
    }
    DensityReport {
        nodes,
        min_fraction: lo,
        max_fraction: hi,
        within_bounds: nodes == 0 || (lo > 0.01 && hi < 0.99),
    }
}
