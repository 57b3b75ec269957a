//! Fundamental solutions of −(Δ+k²), volume and single-layer potentials, and
//! the residuals certifying a hybrid k-quadrature domain.
//!
//! Every source (grid density, analytic ball, boundary polyline, analytic
//! circle) reduces to a weighted point cloud, so potentials, plane-wave
//! pairings and Herglotz integrals share one summation loop.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::bessel::{bessel_y, y_positive, BesselOrder};
use crate::field::{BoundaryCurve, Grid, NodeSet, ScalarField};
use crate::radial::{mvt_constant, RadialSolution};
use crate::{check_dimension, Error, Result};

/// Minimum standoff, in grid steps or segment lengths, for exterior evaluation.
pub const CLEARANCE_FACTOR: f64 = 5.0;
/// Panels per unit of k·r in the radial direction of an analytic ball rule.
const PANEL_DENSITY: f64 = 2.0;
const PANEL_ORDER: usize = 16;
const DISK_ANGLES: usize = 512;
const SPHERE_POLAR: usize = 48;
const SPHERE_AZIMUTH: usize = 96;

/// Ψ_k(r): −Y₀(kr)/4 for n = 2 and cos(kr)/(4πr) for n = 3.
pub fn fundamental_solution(n: usize, k: f64, r: f64) -> Result<f64> {
    check_dimension(n)?;
    if !(k > 0.0) {
        return Err(Error::InvalidParams(format!(
            "wavenumber must be positive, got {k}"
        )));
    }
    if r == 0.0 {
        return Err(Error::NearSingular("Ψ_k is singular at r = 0".into()));
    }
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive, got {r}")));
    }
    Ok(match n {
        2 => -0.25 * bessel_y(BesselOrder::ZERO, k * r)?,
        _ => (k * r).cos() / (4.0 * PI * r),
    })
}

fn kernel(n: usize, k: f64, r: f64) -> f64 {
    if n == 2 {
        -0.25 * y_positive(BesselOrder::ZERO, k * r)
    } else {
        (k * r).cos() / (4.0 * PI * r)
    }
}

/// γ_{n,k} = e^{−(n−3)πi/4} / (2(2π)^{(n−1)/2}) · k^{(n−3)/2}.
pub fn gamma_constant(n: usize, k: f64) -> Result<Complex64> {
    check_dimension(n)?;
    if !(k > 0.0) {
        return Err(Error::InvalidParams(format!(
            "wavenumber must be positive, got {k}"
        )));
    }
    let nf = n as f64;
    let phase = Complex64::from_polar(1.0, -(nf - 3.0) * PI / 4.0);
    Ok(phase / (2.0 * (2.0 * PI).powf(0.5 * (nf - 1.0))) * k.powf(0.5 * (nf - 3.0)))
}

/// A discrete measure Σ wᵢ δ_{xᵢ}. Points carry three coordinates; planar
/// sources leave the last at zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct WeightedPoints {
    pub dim: usize,
    pub points: Vec<[f64; 3]>,
    pub weights: Vec<f64>,
}

impl WeightedPoints {
    fn new(dim: usize) -> Self {
        Self {
            dim,
            points: Vec::new(),
            weights: Vec::new(),
        }
    }

    fn push(&mut self, point: [f64; 3], weight: f64) {
        self.points.push(point);
        self.weights.push(weight);
    }

    fn extend(&mut self, other: &WeightedPoints) {
        self.points.extend_from_slice(&other.points);
        self.weights.extend_from_slice(&other.weights);
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Σ wᵢ·f(xᵢ) in point order.
    pub fn integrate(&self, f: impl Fn(&[f64; 3]) -> f64) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .map(|(p, w)| w * f(p))
            .sum()
    }

    /// Σ wᵢ·Ψ_k(|p − xᵢ|).
    fn potential_at(&self, k: f64, p: &[f64; 3]) -> f64 {
        let dim = self.dim;
        self.integrate(|x| kernel(dim, k, distance(p, x)))
    }

    fn min_distance(&self, p: &[f64; 3]) -> f64 {
        self.points
            .iter()
            .zip(&self.weights)
            .filter(|(_, &w)| w != 0.0)
            .map(|(x, _)| distance(p, x))
            .fold(f64::INFINITY, f64::min)
    }
}

fn distance(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

fn lift(p: [f64; 2]) -> [f64; 3] {
    [p[0], p[1], 0.0]
}

/// Composite Gauss–Legendre rule on [0, r] with `panels` equal panels.
fn radial_rule(r: f64, panels: usize) -> Vec<(f64, f64)> {
    let (nodes, weights) = gauss_legendre(PANEL_ORDER);
    let width = r / panels as f64;
    let mut out = Vec::with_capacity(panels * PANEL_ORDER);
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * width;
        for (x, w) in nodes.iter().zip(&weights) {
            out.push((mid + 0.5 * width * x, 0.5 * width * w));
        }
    }
    out
}

/// A volume density: nodal values on a grid, or a constant on an analytic ball.
#[derive(Clone, Debug)]
pub enum VolumeSource {
    Grid(ScalarField),
    Ball {
        n: usize,
        center: [f64; 3],
        radius: f64,
        density: f64,
    },
}

impl VolumeSource {
    pub fn ball(n: usize, center: [f64; 3], radius: f64, density: f64) -> Result<Self> {
        check_dimension(n)?;
        if !(radius > 0.0) || !density.is_finite() {
            return Err(Error::InvalidParams(format!(
                "ball needs radius > 0 and finite density, got {radius}, {density}"
            )));
        }
        if n == 2 && center[2] != 0.0 {
            return Err(Error::InvalidParams(
                "planar ball must have zero third coordinate".into(),
            ));
        }
        Ok(Self::Ball {
            n,
            center,
            radius,
            density,
        })
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Grid(_) => 2,
            Self::Ball { n, .. } => *n,
        }
    }

    /// Grid nodes weighted by value·h², or a tensor rule on the ball fine
    /// enough for oscillations up to wavenumber `k`.
    pub fn quadrature(&self, k: f64) -> WeightedPoints {
        match self {
            Self::Grid(field) => {
                let grid = field.grid();
                let h2 = grid.h() * grid.h();
                let mut out = WeightedPoints::new(2);
                for (idx, &v) in field.values().iter().enumerate() {
                    if v != 0.0 {
                        out.push(lift(grid.point(idx)), v * h2);
                    }
                }
                out
            }
            Self::Ball {
                n,
                center,
                radius,
                density,
            } => {
                let panels = 8 + (PANEL_DENSITY * k * radius).ceil() as usize;
                let radial = radial_rule(*radius, panels);
                let mut out = WeightedPoints::new(*n);
                if *n == 2 {
                    let dphi = 2.0 * PI / DISK_ANGLES as f64;
                    for &(r, wr) in &radial {
                        for a in 0..DISK_ANGLES {
                            let phi = a as f64 * dphi;
                            let p = [center[0] + r * phi.cos(), center[1] + r * phi.sin(), 0.0];
                            out.push(p, density * wr * r * dphi);
                        }
                    }
                } else {
                    let (tn, tw) = gauss_legendre(SPHERE_POLAR);
                    let dphi = 2.0 * PI / SPHERE_AZIMUTH as f64;
                    for &(r, wr) in &radial {
                        for (c, wc) in tn.iter().zip(&tw) {
                            let s = (1.0 - c * c).sqrt();
                            for a in 0..SPHERE_AZIMUTH {
                                let phi = a as f64 * dphi;
                                let p = [
                                    center[0] + r * s * phi.cos(),
                                    center[1] + r * s * phi.sin(),
                                    center[2] + r * c,
                                ];
                                out.push(p, density * wr * r * r * wc * dphi);
                            }
                        }
                    }
                }
                out
            }
        }
    }

    /// Distance below which evaluation counts as near-singular.
    fn standoff(&self) -> f64 {
        match self {
            Self::Grid(field) => CLEARANCE_FACTOR * field.grid().h(),
            Self::Ball { radius, .. } => {
                CLEARANCE_FACTOR * radius / (DISK_ANGLES as f64 / (2.0 * PI))
            }
        }
    }
}

/// A surface density on a planar curve: per-segment values on a polyline, or
/// a constant on an analytic circle integrated by the trapezoid rule.
#[derive(Clone, Debug)]
pub enum LayerSource {
    Polyline {
        curve: BoundaryCurve,
        g: Vec<f64>,
    },
    Circle {
        center: [f64; 2],
        radius: f64,
        g: f64,
        nodes: usize,
    },
}

impl LayerSource {
    pub fn polyline(curve: BoundaryCurve, g: Vec<f64>) -> Result<Self> {
        if g.len() != curve.segments.len() {
            return Err(Error::InvalidParams(format!(
                "{} densities for {} segments",
                g.len(),
                curve.segments.len()
            )));
        }
        Ok(Self::Polyline { curve, g })
    }

    pub fn circle(center: [f64; 2], radius: f64, g: f64, nodes: usize) -> Result<Self> {
        if !(radius > 0.0) || nodes < 3 || !g.is_finite() {
            return Err(Error::InvalidParams(format!(
                "circle needs radius > 0, at least 3 nodes and finite g, got {radius}, {nodes}, {g}"
            )));
        }
        Ok(Self::Circle {
            center,
            radius,
            g,
            nodes,
        })
    }

    pub fn quadrature(&self) -> WeightedPoints {
        let mut out = WeightedPoints::new(2);
        match self {
            Self::Polyline { curve, g } => {
                for (s, &gv) in curve.segments.iter().zip(g) {
                    out.push(lift(s.midpoint), gv * s.length);
                }
            }
            Self::Circle {
                center,
                radius,
                g,
                nodes,
            } => {
                let dphi = 2.0 * PI / *nodes as f64;
                for a in 0..*nodes {
                    let phi = a as f64 * dphi;
                    out.push(
                        [
                            center[0] + radius * phi.cos(),
                            center[1] + radius * phi.sin(),
                            0.0,
                        ],
                        g * radius * dphi,
                    );
                }
            }
        }
        out
    }

    fn standoff(&self) -> f64 {
        match self {
            Self::Polyline { curve, .. } => CLEARANCE_FACTOR * curve.max_segment_length(),
            Self::Circle { radius, nodes, .. } => {
                CLEARANCE_FACTOR * 2.0 * PI * radius / *nodes as f64
            }
        }
    }

    pub fn is_closed(&self) -> bool {
        match self {
            Self::Polyline { curve, .. } => curve.closed && !curve.is_empty(),
            Self::Circle { .. } => true,
        }
    }

    fn densities_nonnegative(&self) -> bool {
        match self {
            Self::Polyline { g, .. } => g.iter().all(|&v| v >= 0.0),
            Self::Circle { g, .. } => *g >= 0.0,
        }
    }

    /// Whether `p` lies strictly inside the curve, by winding number.
    fn encloses(&self, p: [f64; 2]) -> bool {
        match self {
            Self::Circle { center, radius, .. } => {
                (p[0] - center[0]).hypot(p[1] - center[1]) < *radius
            }
            Self::Polyline { curve, .. } => {
                let mut winding = 0.0;
                for s in &curve.segments {
                    let t = [-s.normal[1] * 0.5 * s.length, s.normal[0] * 0.5 * s.length];
                    let a = [s.midpoint[0] - t[0] - p[0], s.midpoint[1] - t[1] - p[1]];
                    let b = [s.midpoint[0] + t[0] - p[0], s.midpoint[1] + t[1] - p[1]];
                    winding += (a[0] * b[1] - a[1] * b[0]).atan2(a[0] * b[0] + a[1] * b[1]);
                }
                winding > PI
            }
        }
    }
}

fn check_clearance(sources: &WeightedPoints, standoff: f64, points: &[[f64; 3]]) -> Result<()> {
    for p in points {
        let d = sources.min_distance(p);
        if d < standoff {
            return Err(Error::NearSingular(format!(
                "evaluation point {:?} lies {d:.3e} from the source, below the standoff {standoff:.3e}",
                &p[..2]
            )));
        }
    }
    Ok(())
}

fn potentials(sources: &WeightedPoints, k: f64, points: &[[f64; 3]]) -> Vec<f64> {
    points
        .par_iter()
        .map(|p| sources.potential_at(k, p))
        .collect()
}

fn check_k(k: f64) -> Result<()> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "wavenumber must be positive and finite, got {k}"
        )))
    }
}

/// Σ_nodes Ψ_k(|p − node|)·density·h² at each point.
pub fn volume_potential(density: &ScalarField, k: f64, points: &[[f64; 2]]) -> Result<Vec<f64>> {
    source_potential(&VolumeSource::Grid(density.clone()), k, points)
}

pub fn source_potential(source: &VolumeSource, k: f64, points: &[[f64; 2]]) -> Result<Vec<f64>> {
    check_k(k)?;
    if source.dim() != 2 {
        return Err(Error::InvalidParams(
            "potentials are evaluated in the plane".into(),
        ));
    }
    let quad = source.quadrature(k);
    let points: Vec<[f64; 3]> = points.iter().map(|&p| lift(p)).collect();
    check_clearance(&quad, source.standoff(), &points)?;
    Ok(potentials(&quad, k, &points))
}

/// Midpoint-rule single layer Σ_segments Ψ_k(|p − midpoint|)·g·length.
pub fn layer_potential(
    boundary: &BoundaryCurve,
    g: &[f64],
    k: f64,
    points: &[[f64; 2]],
) -> Result<Vec<f64>> {
    let layer = LayerSource::polyline(boundary.clone(), g.to_vec())?;
    source_layer_potential(&layer, k, points)
}

/// Trapezoid-rule single layer of a constant density on an exact circle.
pub fn circle_layer_potential(
    center: [f64; 2],
    radius: f64,
    g: f64,
    nodes: usize,
    k: f64,
    points: &[[f64; 2]],
) -> Result<Vec<f64>> {
    source_layer_potential(&LayerSource::circle(center, radius, g, nodes)?, k, points)
}

pub fn source_layer_potential(
    layer: &LayerSource,
    k: f64,
    points: &[[f64; 2]],
) -> Result<Vec<f64>> {
    check_k(k)?;
    let quad = layer.quadrature();
    let points: Vec<[f64; 3]> = points.iter().map(|&p| lift(p)).collect();
    check_clearance(&quad, layer.standoff(), &points)?;
    Ok(potentials(&quad, k, &points))
}

/// D with its surface density g on ∂D, volume density h on D and the bounded
/// density form of μ.
#[derive(Clone, Debug)]
pub struct QuadratureDomain {
    mask: NodeSet,
    boundary: LayerSource,
    h_volume: VolumeSource,
    mu: VolumeSource,
}

impl QuadratureDomain {
    pub fn new(
        mask: NodeSet,
        boundary: LayerSource,
        h_volume: VolumeSource,
        mu: VolumeSource,
    ) -> Result<Self> {
        let grid = *mask.grid();
        if mask.count() == 0 {
            return Err(Error::EmptyDomain);
        }
        if !boundary.is_closed() {
            return Err(Error::InvalidParams(
                "boundary must be a nonempty closed curve".into(),
            ));
        }
        if !boundary.densities_nonnegative() {
            return Err(Error::InvalidParams(
                "surface density g must be nonnegative".into(),
            ));
        }
        for (name, source) in [("h", &h_volume), ("μ", &mu)] {
            match source {
                VolumeSource::Grid(field) => {
                    if *field.grid() != grid {
                        return Err(Error::GridMismatch);
                    }
                    for (idx, &v) in field.values().iter().enumerate() {
                        if v != 0.0 && !mask.contains(idx) {
                            return Err(Error::InvalidParams(format!(
                                "{name} is nonzero outside D at node {idx}"
                            )));
                        }
                    }
                }
                VolumeSource::Ball { n, .. } if *n != 2 => {
                    return Err(Error::InvalidParams(format!("{name} must be planar")));
                }
                VolumeSource::Ball { center, radius, .. } if name == "μ" => {
                    let inside = |p: [f64; 2]| boundary.encloses(p);
                    let rim = (0..64).all(|a| {
                        let phi = 2.0 * PI * a as f64 / 64.0;
                        inside([
                            center[0] + radius * phi.cos(),
                            center[1] + radius * phi.sin(),
                        ])
                    });
                    if !rim {
                        return Err(Error::InvalidParams(format!(
                            "{name} ball is not enclosed by the boundary"
                        )));
                    }
                }
                VolumeSource::Ball { .. } => {}
            }
        }
        let h_ok = match &h_volume {
            VolumeSource::Grid(field) => field.values().iter().all(|&v| v >= 0.0),
            VolumeSource::Ball { density, .. } => *density >= 0.0,
        };
        if !h_ok {
            return Err(Error::InvalidParams(
                "volume density h must be nonnegative".into(),
            ));
        }
        if let VolumeSource::Grid(field) = &mu {
            for (idx, &v) in field.values().iter().enumerate() {
                if v > 0.0 && !boundary.encloses(grid.point(idx)) {
                    return Err(Error::InvalidParams(format!(
                        "boundary does not enclose μ at node {idx}"
                    )));
                }
            }
        }
        Ok(Self {
            mask,
            boundary,
            h_volume,
            mu,
        })
    }

    pub fn mask(&self) -> &NodeSet {
        &self.mask
    }

    pub fn boundary(&self) -> &LayerSource {
        &self.boundary
    }

    pub fn h_volume(&self) -> &VolumeSource {
        &self.h_volume
    }

    pub fn mu(&self) -> &VolumeSource {
        &self.mu
    }

    /// μ − h·χ_D − g·H¹⌊∂D as one signed point cloud.
    fn signed_measure(&self, k: f64) -> (WeightedPoints, WeightedPoints) {
        let positive = self.mu.quadrature(k);
        let mut negative = self.h_volume.quadrature(k);
        negative.extend(&self.boundary.quadrature());
        (positive, negative)
    }
}

/// Plane-wave identity defect per direction and its normalized maximum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub residual: f64,
    pub per_direction: Vec<f64>,
}

/// For w = cos(k x·θⱼ), sin(k x·θⱼ) at `num_waves` equispaced angles:
/// max |∫w dμ − ∫_D wh − ∫_∂D wg| over max(|∫w dμ| + |∫_D wh| + 1e−30).
pub fn quadrature_identity(
    qd: &QuadratureDomain,
    k: f64,
    num_waves: usize,
) -> Result<IdentityReport> {
    check_k(k)?;
    if num_waves == 0 {
        return Ok(IdentityReport {
            residual: 0.0,
            per_direction: Vec::new(),
        });
    }
    let mu = qd.mu.quadrature(k);
    let h = qd.h_volume.quadrature(k);
    let g = qd.boundary.quadrature();
    let rows: Vec<(f64, f64)> = (0..num_waves)
        .into_par_iter()
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / num_waves as f64;
            let (c, s) = (theta.cos(), theta.sin());
            let phase = |p: &[f64; 3]| k * (p[0] * c + p[1] * s);
            let mut defect: f64 = 0.0;
            let mut scale: f64 = 0.0;
            for w in [f64::cos, f64::sin] {
                let m = mu.integrate(|p| w(phase(p)));
                let v = h.integrate(|p| w(phase(p)));
                let b = g.integrate(|p| w(phase(p)));
                defect = defect.max((m - v - b).abs());
                scale = scale.max(m.abs() + v.abs() + 1e-30);
            }
            (defect, scale)
        })
        .collect();
    let scale = rows.iter().fold(0.0f64, |acc, r| acc.max(r.1));
    let per_direction: Vec<f64> = rows.iter().map(|r| r.0 / scale).collect();
    let residual = per_direction.iter().fold(0.0f64, |acc, &v| acc.max(v));
    Ok(IdentityReport {
        residual,
        per_direction,
    })
}

pub fn quadrature_identity_residual(
    qd: &QuadratureDomain,
    k: f64,
    num_waves: usize,
) -> Result<f64> {
    Ok(quadrature_identity(qd, k, num_waves)?.residual)
}

/// Points on the circle of `radius` about the origin.
pub fn ring(radius: f64, count: usize) -> Vec<[f64; 2]> {
    (0..count)
        .map(|j| {
            let phi = 2.0 * PI * j as f64 / count as f64;
            [radius * phi.cos(), radius * phi.sin()]
        })
        .collect()
}

/// max over ring points of |Ψ∗μ − Ψ∗(hχ_D) − SL(g)| / max |Ψ∗μ|.
pub fn potential_match_residual(
    qd: &QuadratureDomain,
    k: f64,
    ring_radius: f64,
    num_points: usize,
) -> Result<f64> {
    check_k(k)?;
    if num_points == 0 {
        return Err(Error::InvalidParams("ring needs at least one point".into()));
    }
    let grid = qd.mask.grid();
    let points: Vec<[f64; 3]> = ring(ring_radius, num_points)
        .into_iter()
        .map(lift)
        .collect();
    let standoff = CLEARANCE_FACTOR * grid.h();
    let d_nodes: WeightedPoints = {
        let mut w = WeightedPoints::new(2);
        for idx in (0..grid.len()).filter(|&i| qd.mask.contains(i)) {
            w.push(lift(grid.point(idx)), 1.0);
        }
        w
    };
    let rim = qd.boundary.quadrature();
    let required = standoff.max(qd.boundary.standoff());
    for p in &points {
        if qd.boundary.encloses([p[0], p[1]]) {
            return Err(Error::Clearance(format!(
                "ring point {:?} lies inside D",
                &p[..2]
            )));
        }
        let d = d_nodes.min_distance(p).min(rim.min_distance(p));
        if d < required {
            return Err(Error::Clearance(format!(
                "ring point {:?} lies {d:.3e} from D, below {required:.3e}",
                &p[..2]
            )));
        }
    }
    let (positive, negative) = qd.signed_measure(k);
    let mu_pot = potentials(&positive, k, &points);
    let sigma_pot = potentials(&negative, k, &points);
    let scale = mu_pot.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    let defect = mu_pot
        .iter()
        .zip(&sigma_pot)
        .fold(0.0f64, |acc, (m, s)| acc.max((m - s).abs()));
    Ok(if scale > 0.0 { defect / scale } else { defect })
}

/// JSON-facing summary of both certificates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub identity_residual: f64,
    pub potential_residual: f64,
    pub per_direction: Vec<f64>,
}

pub fn residual_report(
    qd: &QuadratureDomain,
    k: f64,
    num_waves: usize,
    ring_radius: f64,
    num_points: usize,
) -> Result<ResidualReport> {
    let identity = quadrature_identity(qd, k, num_waves)?;
    Ok(ResidualReport {
        identity_residual: identity.residual,
        potential_residual: potential_match_residual(qd, k, ring_radius, num_points)?,
        per_direction: identity.per_direction,
    })
}

/// Herglotz-type integral of a source per direction.
#[derive(Clone, Debug, PartialEq)]
pub struct FarFieldSamples {
    pub directions: Vec<Vec<f64>>,
    pub values: Vec<Complex64>,
}

impl FarFieldSamples {
    pub fn new(directions: Vec<Vec<f64>>, values: Vec<Complex64>) -> Result<Self> {
        check_directions(&directions)?;
        if directions.len() != values.len() {
            return Err(Error::InvalidParams(format!(
                "{} directions for {} values",
                directions.len(),
                values.len()
            )));
        }
        Ok(Self { directions, values })
    }

    pub fn max_abs(&self) -> f64 {
        self.values
            .iter()
            .fold(0.0, |acc: f64, v| acc.max(v.norm()))
    }
}

fn check_directions(directions: &[Vec<f64>]) -> Result<()> {
    for d in directions {
        let norm = d.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!(
                "direction {d:?} has norm {norm}, not 1"
            )));
        }
    }
    Ok(())
}

/// `count` equispaced unit vectors in the plane.
pub fn circle_directions(count: usize) -> Vec<Vec<f64>> {
    (0..count)
        .map(|j| {
            let phi = 2.0 * PI * j as f64 / count as f64;
            vec![phi.cos(), phi.sin()]
        })
        .collect()
}

/// `count` near-uniform unit vectors in space on a Fibonacci lattice.
pub fn sphere_directions(count: usize) -> Vec<Vec<f64>> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|j| {
            let z = 1.0 - 2.0 * (j as f64 + 0.5) / count as f64;
            let s = (1.0 - z * z).sqrt();
            let phi = golden * j as f64;
            let v = [s * phi.cos(), s * phi.sin(), z];
            let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            v.iter().map(|x| x / norm).collect()
        })
        .collect()
}

/// ∫ e^{−ik x̂·y}·density(y) dy + ∫_∂D e^{−ik x̂·y}·g dS per direction x̂.
pub fn herglotz_integral(
    volume_density: &ScalarField,
    boundary: &BoundaryCurve,
    g: &[f64],
    k: f64,
    directions: &[Vec<f64>],
) -> Result<FarFieldSamples> {
    let layer = LayerSource::polyline(boundary.clone(), g.to_vec())?;
    source_herglotz(
        &VolumeSource::Grid(volume_density.clone()),
        Some(&layer),
        k,
        directions,
    )
}

pub fn source_herglotz(
    volume: &VolumeSource,
    layer: Option<&LayerSource>,
    k: f64,
    directions: &[Vec<f64>],
) -> Result<FarFieldSamples> {
    check_k(k)?;
    check_directions(directions)?;
    let dim = volume.dim();
    if layer.is_some() && dim != 2 {
        return Err(Error::InvalidParams("layer sources are planar".into()));
    }
    if let Some(d) = directions.iter().find(|d| d.len() != dim) {
        return Err(Error::InvalidParams(format!(
            "direction {d:?} does not have {dim} components"
        )));
    }
    let mut quad = volume.quadrature(k);
    if let Some(layer) = layer {
        quad.extend(&layer.quadrature());
    }
    let values = directions
        .par_iter()
        .map(|d| {
            let dot = |p: &[f64; 3]| k * d.iter().zip(p).map(|(a, b)| a * b).sum::<f64>();
            let re = quad.integrate(|p| dot(p).cos());
            let im = -quad.integrate(|p| dot(p).sin());
            Complex64::new(re, im)
        })
        .collect();
    FarFieldSamples::new(directions.to_vec(), values)
}

/// μ∗φ_ε for μ = mass·δ_center, as the ball average normalized by c^{MVT}
/// so that ∫ w dμ_ε = mass·w(center) for every solution of (Δ+k²)w = 0.
pub fn mollify_point_mass(
    n: usize,
    k: f64,
    center: [f64; 3],
    mass: f64,
    eps: f64,
) -> Result<VolumeSource> {
    let c = mvt_constant(n, k, eps)?;
    VolumeSource::ball(n, center, eps, mass / c)
}

/// The hybrid domain built from a planar radial solution: μ is the mollified
/// point mass a·c^{MVT}(r1)·δ₀ (density a on B_{r1}), h = b on D = B_support
/// and g = g(support) on an analytic circle of `circle_nodes` nodes. Passing
/// a support other than ρ gives the perturbation control.
pub fn radial_quadrature_domain(
    sol: &RadialSolution,
    grid: Grid,
    support: f64,
    circle_nodes: usize,
) -> Result<QuadratureDomain> {
    let p = &sol.params;
    if p.n != 2 {
        return Err(Error::InvalidParams(
            "planar quadrature domains need n = 2".into(),
        ));
    }
    if !(support > p.r1) || support + CLEARANCE_FACTOR * grid.h() > grid.radius() {
        return Err(Error::InvalidParams(format!(
            "support {support} must exceed r1 = {} and fit the grid ball with clearance",
            p.r1
        )));
    }
    let k = p.k();
    let mass = p.a * mvt_constant(2, k, p.r1)?;
    let mu = mollify_point_mass(2, k, [0.0; 3], mass, p.r1)?;
    let h_volume = VolumeSource::ball(2, [0.0; 3], support, p.b)?;
    let boundary = LayerSource::circle([0.0, 0.0], support, p.g.eval(support), circle_nodes)?;
    let mask = NodeSet::from_fn(grid, |x, y| x.hypot(y) < support);
    QuadratureDomain::new(mask, boundary, h_volume, mu)
}

/// Gauss–Legendre nodes and weights on [−1, 1] by Newton iteration on Pₙ.
pub fn gauss_legendre(count: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; count];
    let mut weights = vec![0.0; count];
    let nf = count as f64;
    for i in 0..count.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=count {
                let p2 = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = nf * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[count - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[count - 1 - i] = w;
    }
    (nodes, weights)
}
