//! Non-scattering contrasts built from a minimizer, and the far-field checks
//! that certify the resulting source is nonradiating.
//!
//! With v₀ = u_* + u₀, the contrast ρ = −h/v₀ near ∂D glues v₀ to the
//! incident field u₀ outside D; a cutoff ψ blends v₀ into the constant 1 deep
//! inside, where ρ = −(Δ_h+k²)v/v.

use serde::Serialize;

use crate::bessel::{bessel_j, first_zero, BesselOrder};
use crate::field::{distance_to_set, laplacian, BoundaryCurve, Grid, NodeSet, ScalarField};
use crate::minimizer::{normal_derivatives, DeviationReport, MinimizeResult};
use crate::quadrature::{circle_directions, herglotz_integral};
use crate::{check_dimension, gamma_half, Error, Result};

/// u₀(x) = Γ(n/2)·(2/(k|x|))^{(n−2)/2}·J_{(n−2)/2}(k|x|), so u₀(0) = 1.
pub fn incident_field(n: usize, k: f64, grid: Grid) -> Result<ScalarField> {
    check_dimension(n)?;
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "wavenumber must be positive, got {k}"
        )));
    }
    let order = BesselOrder::inner(n)?;
    let limit = first_zero(order) / k;
    if grid.radius() >= limit {
        return Err(Error::Precondition(format!(
            "grid ball radius {} must stay below j/k = {limit}",
            grid.radius()
        )));
    }
    let nu = order.nu();
    let scale = gamma_half(n as u32);
    Ok(ScalarField::unmasked_from_fn(grid, |x, y| {
        let kr = k * x.hypot(y);
        if kr == 0.0 {
            1.0
        } else {
            scale * (2.0 / kr).powf(nu) * bessel_j(order, kr)
        }
    }))
}

/// Quintic smoothstep 6t⁵ − 15t⁴ + 10t³ clamped to [0, 1].
fn smoothstep(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * t * (t * (6.0 * t - 15.0) + 10.0)
}

#[derive(Clone, Debug)]
pub struct ContrastResult {
    /// Contrast, supported on D.
    pub rho: ScalarField,
    /// Modified total field; equals u₀ off D.
    pub v: ScalarField,
    /// v₀ = u_* + u₀.
    pub v0: ScalarField,
    /// δ: ψ = 1 within δ/3 of ∂D and 0 beyond δ.
    pub band_width: f64,
    /// D = {u_* > τ}.
    pub domain: NodeSet,
    /// Nodes of D where ψ = 1 and ρ = −h/v₀.
    pub band: NodeSet,
    /// min over the band of h/v₀.
    pub min_band_ratio: f64,
    u0: ScalarField,
    inside_distance: Vec<f64>,
    outside_distance: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ContrastInvariants {
    pub v_matches_incident_outside: bool,
    pub rho_bounded_below_near_boundary: bool,
    pub v_positive_near_domain: bool,
}

impl ContrastInvariants {
    pub fn all(&self) -> bool {
        self.v_matches_incident_outside
            && self.rho_bounded_below_near_boundary
            && self.v_positive_near_domain
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BandStats {
    pub band_nodes: usize,
    pub domain_nodes: usize,
    pub band_width: f64,
    pub min_band_ratio: f64,
    pub max_abs_rho: f64,
    pub min_v: f64,
}

impl ContrastResult {
    pub fn invariants(&self) -> ContrastInvariants {
        let len = self.v.values().len();
        let outside = (0..len).filter(|&i| !self.domain.contains(i));
        let v_matches_incident_outside = outside
            .clone()
            .all(|i| self.v.values()[i] == self.u0.values()[i]);
        let rho_bounded_below_near_boundary = (0..len)
            .filter(|&i| {
                self.domain.contains(i) && self.inside_distance[i] <= 0.5 * self.band_width
            })
            .all(|i| self.rho.values()[i].abs() >= 0.5 * self.min_band_ratio);
        let v_positive_near_domain = (0..len)
            .filter(|&i| self.domain.contains(i) || self.outside_distance[i] <= self.band_width)
            .all(|i| self.v.values()[i] > 0.0);
        ContrastInvariants {
            v_matches_incident_outside,
            rho_bounded_below_near_boundary,
            v_positive_near_domain,
        }
    }

    pub fn band_stats(&self) -> BandStats {
        let domain: Vec<usize> = (0..self.v.values().len())
            .filter(|&i| self.domain.contains(i))
            .collect();
        BandStats {
            band_nodes: self.band.count(),
            domain_nodes: domain.len(),
            band_width: self.band_width,
            min_band_ratio: self.min_band_ratio,
            max_abs_rho: self.rho.max_abs(),
            min_v: domain
                .iter()
                .map(|&i| self.v.values()[i])
                .fold(f64::INFINITY, f64::min),
        }
    }

    /// (Δ_h + k² + ρχ_D)v at every interior node; zero beyond the band by
    /// construction, the discrete surface source g inside it.
    pub fn gluing_residual(&self, k: f64) -> ScalarField {
        let lap = laplacian(&self.v);
        let grid = *self.v.grid();
        let values = (0..grid.len())
            .map(|i| {
                if grid.on_box_edge(i) {
                    0.0
                } else {
                    lap.values()[i] + (k * k + self.rho.values()[i]) * self.v.values()[i]
                }
            })
            .collect();
        ScalarField::unmasked_from_values(grid, values).expect("finite residual")
    }
}

/// Builds ρ and v from a minimizer whose source splits as f = μ − h.
///
/// `h` must be nonzero and `mu` zero on the band; u₀ must be positive on every
/// node within δ of ∂D; δ ≥ 6h.
pub fn build_contrast(
    result: &MinimizeResult,
    h: &ScalarField,
    mu: &ScalarField,
    k: f64,
    u0: &ScalarField,
    delta: f64,
) -> Result<ContrastResult> {
    let grid = *result.u.grid();
    for field in [h, mu, u0] {
        if *field.grid() != grid {
            return Err(Error::GridMismatch);
        }
    }
    if !(k > 0.0) {
        return Err(Error::InvalidParams(format!(
            "wavenumber must be positive, got {k}"
        )));
    }
    if !(delta >= 6.0 * grid.h()) {
        return Err(Error::Precondition(format!(
            "band width {delta} must be at least 6h = {}",
            6.0 * grid.h()
        )));
    }
    let domain = result.positivity_mask.clone();
    if domain.count() == 0 {
        return Err(Error::EmptyDomain);
    }
    let complement = NodeSet::new(grid, domain.values().iter().map(|&b| !b).collect())?;
    let node_distance = distance_to_set(&complement);
    // The node-set distance jitters on the scale of h, which Δ_h would turn
    // into O(1/h) noise in ρ; near the curve use the exact distance to it.
    let inside_distance: Vec<f64> = node_distance
        .iter()
        .enumerate()
        .map(|(i, &d)| {
            if domain.contains(i) && d <= delta + 2.0 * grid.h() {
                result.boundary.distance(grid.point(i))
            } else {
                d
            }
        })
        .collect();
    let outside_distance = distance_to_set(&domain);
    let near = |i: usize| {
        if domain.contains(i) {
            inside_distance[i] <= delta
        } else {
            outside_distance[i] <= delta
        }
    };
    if let Some(i) = (0..grid.len()).find(|&i| near(i) && !(u0.values()[i] > 0.0)) {
        return Err(Error::Precondition(format!(
            "incident field {} is not positive at {:?}, within δ of the boundary",
            u0.values()[i],
            grid.point(i)
        )));
    }

    let (us, u0v) = (result.u.values(), u0.values());
    let v0: Vec<f64> = us.iter().zip(u0v).map(|(a, b)| a + b).collect();
    let psi = |i: usize| smoothstep((delta - inside_distance[i]) / (delta - delta / 3.0));
    let in_band = |i: usize| domain.contains(i) && inside_distance[i] <= delta / 3.0;
    let mut v = u0v.to_vec();
    for i in (0..grid.len()).filter(|&i| domain.contains(i)) {
        let p = psi(i);
        v[i] = v0[i] * p + (1.0 - p);
        if !(v[i] > 0.0) {
            return Err(Error::PositivityLost(format!(
                "v = {} at {:?}",
                v[i],
                grid.point(i)
            )));
        }
    }
    let v = ScalarField::unmasked_from_values(grid, v)?;
    let lap = laplacian(&v);
    let mut rho = vec![0.0; grid.len()];
    let mut band = vec![false; grid.len()];
    let mut min_band_ratio = f64::INFINITY;
    for i in (0..grid.len()).filter(|&i| domain.contains(i)) {
        if in_band(i) {
            if mu.values()[i] != 0.0 {
                return Err(Error::Precondition(format!(
                    "μ is nonzero on the band at {:?}",
                    grid.point(i)
                )));
            }
            if h.values()[i] == 0.0 {
                return Err(Error::Precondition(format!(
                    "h vanishes on the band at {:?}",
                    grid.point(i)
                )));
            }
            if !(v0[i] > 0.0) {
                return Err(Error::PositivityLost(format!(
                    "v0 = {} on the band at {:?}",
                    v0[i],
                    grid.point(i)
                )));
            }
            rho[i] = -h.values()[i] / v0[i];
            band[i] = true;
            min_band_ratio = min_band_ratio.min((h.values()[i] / v0[i]).abs());
        } else {
            rho[i] = -(lap.values()[i] + k * k * v.values()[i]) / v.values()[i];
        }
    }
    Ok(ContrastResult {
        rho: ScalarField::unmasked_from_values(grid, rho)?,
        v,
        v0: ScalarField::unmasked_from_values(grid, v0)?,
        band_width: delta,
        domain,
        band: NodeSet::new(grid, band)?,
        min_band_ratio,
        u0: u0.clone(),
        inside_distance,
        outside_distance,
    })
}

/// max over directions of |Herglotz(−ρv·χ_D + g·H¹⌊∂D)| over ∫_D|ρv| + ∫_∂D|g|.
pub fn nonradiating_residual(
    cr: &ContrastResult,
    boundary: &BoundaryCurve,
    g: &[f64],
    k: f64,
    num_directions: usize,
) -> Result<f64> {
    let grid = *cr.v.grid();
    let source: Vec<f64> = cr
        .rho
        .values()
        .iter()
        .zip(cr.v.values())
        .map(|(r, v)| -r * v)
        .collect();
    let source = ScalarField::unmasked_from_values(grid, source)?;
    let directions = circle_directions(num_directions);
    let far = herglotz_integral(&source, boundary, g, k, &directions)?;
    let h2 = grid.h() * grid.h();
    let volume: f64 = source.values().iter().map(|s| s.abs() * h2).sum();
    let surface: f64 = boundary
        .segments
        .iter()
        .zip(g)
        .map(|(s, g)| g.abs() * s.length)
        .sum();
    let scale = volume + surface;
    Ok(if scale > 0.0 {
        far.max_abs() / scale
    } else {
        far.max_abs()
    })
}

/// Exterior minus interior outward normal derivative per segment, compared
/// with g. On a minimizer (zero outside D) this is the Bernoulli check.
pub fn jump_relation_check(
    u_total: &ScalarField,
    boundary: &BoundaryCurve,
    g: &[f64],
) -> Result<DeviationReport> {
    if boundary.is_empty() {
        return Err(Error::EmptyDomain);
    }
    if g.len() != boundary.segments.len() {
        return Err(Error::InvalidParams(format!(
            "{} values of g for {} segments",
            g.len(),
            boundary.segments.len()
        )));
    }
    let derivs = normal_derivatives(u_total, boundary)?;
    let jump: Vec<f64> = derivs.iter().map(|d| d.exterior - d.interior).collect();
    Ok(DeviationReport::new(boundary, &jump, g))
}
