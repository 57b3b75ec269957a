//! Node-centred scalar fields on a square grid padding the ball B_R.
//!
//! Node (i, j) sits at (−R_box + i·h, −R_box + j·h) with storage index
//! j·m + i. Nodes with |x| ≥ R carry a Dirichlet mask and hold zero.

mod contour;
mod distance;
mod io;
mod solve;

use std::sync::Arc;

use crate::{Error, Result};

pub use contour::{
    extract_boundary, extract_boundary_with, BoundaryCurve, Segment, DEFAULT_SMOOTHING,
};
pub use distance::{distance_to_set, distance_to_zero_set};
pub use io::{write_boundary_csv, write_field_csv};
pub use solve::{discrete_fundamental_tone, solve_shifted_poisson};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    radius: f64,
    m: usize,
    half_width: f64,
    h: f64,
}

impl Grid {
    pub fn new(radius: f64, m: usize) -> Result<Self> {
        if m < 33 || m % 2 == 0 {
            return Err(Error::InvalidParams(format!(
                "grid size m = {m} must be odd and at least 33"
            )));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidParams(format!(
                "grid radius must be positive, got {radius}"
            )));
        }
        let half_width = radius * (1.0 + 4.0 / m as f64);
        let h = 2.0 * half_width / (m - 1) as f64;
        Ok(Self {
            radius,
            m,
            half_width,
            h,
        })
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn len(&self) -> usize {
        self.m * self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.m + i
    }

    pub fn coord(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.h
    }

    pub fn point(&self, idx: usize) -> [f64; 2] {
        [self.coord(idx % self.m), self.coord(idx / self.m)]
    }

    pub fn on_box_edge(&self, idx: usize) -> bool {
        let (i, j) = (idx % self.m, idx / self.m);
        i == 0 || j == 0 || i == self.m - 1 || j == self.m - 1
    }

    /// True where |x| ≥ R.
    pub fn ball_mask(&self) -> Arc<Vec<bool>> {
        let r2 = self.radius * self.radius;
        Arc::new(
            (0..self.len())
                .map(|idx| {
                    let [x, y] = self.point(idx);
                    x * x + y * y >= r2
                })
                .collect(),
        )
    }

    fn no_mask(&self) -> Arc<Vec<bool>> {
        Arc::new(vec![false; self.len()])
    }
}

/// Boolean node set, e.g. a positivity set {u > τ}.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSet {
    grid: Grid,
    values: Vec<bool>,
}

impl NodeSet {
    pub fn new(grid: Grid, values: Vec<bool>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch);
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> bool) -> Self {
        let values = (0..grid.len())
            .map(|idx| {
                let [x, y] = grid.point(idx);
                f(x, y)
            })
            .collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.values[idx]
    }

    pub fn count(&self) -> usize {
        self.values.iter().filter(|&&v| v).count()
    }
}

#[derive(Clone, Debug)]
pub struct ScalarField {
    grid: Grid,
    values: Vec<f64>,
    mask: Arc<Vec<bool>>,
}

impl ScalarField {
    /// Zero field with the ball mask.
    pub fn zeros(grid: Grid) -> Self {
        Self {
            grid,
            values: vec![0.0; grid.len()],
            mask: grid.ball_mask(),
        }
    }

    /// Samples `f` on unmasked nodes; masked nodes hold zero.
    pub fn from_fn(grid: Grid, f: impl Fn(f64, f64) -> f64) -> Self {
        let mask = grid.ball_mask();
        Self::sample_with_mask(grid, mask, f)
    }

    /// Samples `f` on every node, with no Dirichlet mask.
    pub fn unmasked_from_fn(grid: Grid, f: impl Fn(f64, f64) -> f64) -> Self {
        Self::sample_with_mask(grid, grid.no_mask(), f)
    }

    fn sample_with_mask(grid: Grid, mask: Arc<Vec<bool>>, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = (0..grid.len())
            .map(|idx| {
                if mask[idx] {
                    0.0
                } else {
                    let [x, y] = grid.point(idx);
                    f(x, y)
                }
            })
            .collect();
        Self { grid, values, mask }
    }

    /// Ball-masked field from raw values; rejects nonfinite values and
    /// nonzero values on the mask.
    pub fn from_values(grid: Grid, values: Vec<f64>) -> Result<Self> {
        Self::zeros(grid).with_values(values)
    }

    /// Field from raw values with no Dirichlet mask.
    pub fn unmasked_from_values(grid: Grid, values: Vec<f64>) -> Result<Self> {
        Self::sample_with_mask(grid, grid.no_mask(), |_, _| 0.0).with_values(values)
    }

    /// A field sharing this field's grid and mask.
    pub fn with_values(&self, values: Vec<f64>) -> Result<Self> {
        if values.len() != self.grid.len() {
            return Err(Error::GridMismatch);
        }
        for (idx, &v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!(
                    "non-finite value at node {idx}"
                )));
            }
            if self.mask[idx] && v != 0.0 {
                return Err(Error::InvalidParams(format!(
                    "nonzero value {v} on masked node {idx}"
                )));
            }
        }
        Ok(Self {
            grid: self.grid,
            values,
            mask: self.mask.clone(),
        })
    }

    /// Cell-averaged indicator of the disk |x − c| < r, by 16×16 supersampling
    /// of cells the circle crosses.
    pub fn disk_coverage(grid: Grid, center: [f64; 2], radius: f64) -> Self {
        const SUB: usize = 16;
        let h = grid.h();
        let reach = std::f64::consts::SQRT_2 * 0.5 * h;
        Self::from_fn(grid, |x, y| {
            let d = ((x - center[0]).powi(2) + (y - center[1]).powi(2)).sqrt();
            if d <= radius - reach {
                return 1.0;
            }
            if d >= radius + reach {
                return 0.0;
            }
            let mut inside = 0usize;
            for a in 0..SUB {
                for b in 0..SUB {
                    let px = x + ((a as f64 + 0.5) / SUB as f64 - 0.5) * h;
                    let py = y + ((b as f64 + 0.5) / SUB as f64 - 0.5) * h;
                    if (px - center[0]).powi(2) + (py - center[1]).powi(2) < radius * radius {
                        inside += 1;
                    }
                }
            }
            inside as f64 / (SUB * SUB) as f64
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn is_masked(&self, idx: usize) -> bool {
        self.mask[idx]
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[self.grid.index(i, j)]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |acc: f64, v| acc.max(v.abs()))
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Membership in the discrete constraint set: nonnegative everywhere.
    pub fn is_admissible(&self) -> bool {
        self.values.iter().all(|&v| v >= 0.0)
    }

    pub fn same_grid(&self, other: &ScalarField) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }

    /// Applies `f` nodewise, keeping masked nodes at zero.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        let values = self
            .values
            .iter()
            .zip(self.mask.iter())
            .map(|(&v, &masked)| if masked { 0.0 } else { f(v) })
            .collect();
        Self {
            grid: self.grid,
            values,
            mask: self.mask.clone(),
        }
    }

    pub fn threshold_set(&self, tau: f64) -> NodeSet {
        NodeSet {
            grid: self.grid,
            values: self.values.iter().map(|&v| v > tau).collect(),
        }
    }

    /// Bilinear interpolation; zero outside the box.
    pub fn sample(&self, x: f64, y: f64) -> f64 {
        let g = &self.grid;
        let fx = (x + g.half_width) / g.h;
        let fy = (y + g.half_width) / g.h;
        let last = (g.m - 1) as f64;
        if !(fx >= 0.0 && fy >= 0.0 && fx <= last && fy <= last) {
            return 0.0;
        }
        let i = (fx.floor() as usize).min(g.m - 2);
        let j = (fy.floor() as usize).min(g.m - 2);
        let (tx, ty) = (fx - i as f64, fy - j as f64);
        let v = |a, b| self.values[g.index(a, b)];
        (1.0 - ty) * ((1.0 - tx) * v(i, j) + tx * v(i + 1, j))
            + ty * ((1.0 - tx) * v(i, j + 1) + tx * v(i + 1, j + 1))
    }
}

/// 5-point Laplacian; zero on masked and box-edge nodes.
pub fn laplacian(u: &ScalarField) -> ScalarField {
    let g = u.grid;
    let m = g.m;
    let inv_h2 = 1.0 / (g.h * g.h);
    let values = (0..g.len())
        .map(|idx| {
            if u.mask[idx] || g.on_box_edge(idx) {
                0.0
            } else {
                let v = &u.values;
                (v[idx + 1] + v[idx - 1] + v[idx + m] + v[idx - m] - 4.0 * v[idx]) * inv_h2
            }
        })
        .collect();
    ScalarField {
        grid: g,
        values,
        mask: u.mask.clone(),
    }
}

/// Σ values·h² over unmasked nodes.
pub fn integrate(u: &ScalarField) -> f64 {
    let h2 = u.grid.h * u.grid.h;
    u.values
        .iter()
        .zip(u.mask.iter())
        .filter(|(_, &m)| !m)
        .map(|(v, _)| v)
        .sum::<f64>()
        * h2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_rejects_bad_sizes() {
        assert!(Grid::new(1.0, 32).is_err());
        assert!(Grid::new(1.0, 31).is_err());
        assert!(Grid::new(0.0, 33).is_err());
        let g = Grid::new(1.0, 33).unwrap();
        assert_eq!(g.coord(16), 0.0);
        assert!(g.half_width() > 1.0);
    }

    #[test]
    fn laplacian_of_quadratic() {
        let g = Grid::new(1.0, 65).unwrap();
        let u = ScalarField::from_fn(g, |x, _| x * x);
        let lap = laplacian(&u);
        let m = g.m();
        for j in 1..m - 1 {
            for i in 1..m - 1 {
                let idx = g.index(i, j);
                let [x, y] = g.point(idx);
                if (x * x + y * y).sqrt() < 1.0 - 2.0 * g.h() {
                    assert!((lap.values()[idx] - 2.0).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn constant_integrates_to_node_count() {
        let g = Grid::new(1.0, 33).unwrap();
        let u = ScalarField::from_fn(g, |_, _| 3.0);
        let count = u.mask().iter().filter(|&&m| !m).count();
        assert!((integrate(&u) - 3.0 * count as f64 * g.h() * g.h()).abs() < 1e-12);
    }

    #[test]
    fn with_values_checks_mask() {
        let g = Grid::new(1.0, 33).unwrap();
        let mut v = vec![0.0; g.len()];
        v[0] = 1.0;
        assert!(ScalarField::from_values(g, v).is_err());
    }

    #[test]
    fn bilinear_sample_is_exact_for_bilinear_functions() {
        let g = Grid::new(1.0, 33).unwrap();
        let u = ScalarField::unmasked_from_fn(g, |x, y| 1.0 + 2.0 * x - y + 0.5 * x * y);
        for &(x, y) in &[(0.1, 0.2), (-0.73, 0.41), (0.0, -0.999)] {
            let exact = 1.0 + 2.0 * x - y + 0.5 * x * y;
            assert!((u.sample(x, y) - exact).abs() < 1e-12);
        }
    }
}
