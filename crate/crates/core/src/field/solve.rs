//! Conjugate-gradient solves with −(Δ_h + λ) and the discrete Dirichlet tone.

use super::{Grid, ScalarField};
use crate::{Error, Result};

const CG_TOLERANCE: f64 = 1e-13;
const TONE_TOLERANCE: f64 = 1e-10;
const TONE_MAX_STEPS: usize = 500;

/// −(Δ_h + λ) restricted to unmasked, non-edge nodes.
struct ShiftedOperator {
    m: usize,
    active: Vec<usize>,
    diagonal: f64,
    inv_h2: f64,
}

impl ShiftedOperator {
    fn new(field: &ScalarField, lambda: f64) -> Self {
        let g = field.grid();
        let inv_h2 = 1.0 / (g.h() * g.h());
        let active = (0..g.len())
            .filter(|&i| !field.is_masked(i) && !g.on_box_edge(i))
            .collect();
        Self {
            m: g.m(),
            active,
            diagonal: 4.0 * inv_h2 - lambda,
            inv_h2,
        }
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        let m = self.m;
        for &i in &self.active {
            out[i] =
                self.diagonal * x[i] - (x[i + 1] + x[i - 1] + x[i + m] + x[i - m]) * self.inv_h2;
        }
    }

    fn dot(&self, a: &[f64], b: &[f64]) -> f64 {
        self.active.iter().map(|&i| a[i] * b[i]).sum()
    }

    /// CG for A x = b starting from `x`; entries off the active set stay zero.
    fn solve(&self, b: &[f64], x: &mut [f64], tolerance: f64) -> Result<usize> {
        let n = x.len();
        let mut r = vec![0.0; n];
        let mut ap = vec![0.0; n];
        self.apply(x, &mut ap);
        for &i in &self.active {
            r[i] = b[i] - ap[i];
        }
        let b_norm = self.dot(b, b).sqrt();
        if b_norm == 0.0 {
            x.iter_mut().for_each(|v| *v = 0.0);
            return Ok(0);
        }
        let mut p = r.clone();
        let mut rr = self.dot(&r, &r);
        let max_iter = 20 * self.m + 2000;
        for iter in 0..max_iter {
            if rr.sqrt() <= tolerance * b_norm {
                return Ok(iter);
            }
            self.apply(&p, &mut ap);
            let alpha = rr / self.dot(&p, &ap);
            for &i in &self.active {
                x[i] += alpha * p[i];
                r[i] -= alpha * ap[i];
            }
            let rr_next = self.dot(&r, &r);
            let beta = rr_next / rr;
            rr = rr_next;
            for &i in &self.active {
                p[i] = r[i] + beta * p[i];
            }
        }
        Err(Error::SolveNoConverge {
            iterations: max_iter,
            residual: rr.sqrt() / b_norm,
        })
    }
}

/// Solves (Δ_h + λ)v = rhs with v = 0 on the mask of `rhs` and on the box
/// edge. Requires λ below the discrete tone so the operator is definite.
pub fn solve_shifted_poisson(rhs: &ScalarField, lambda: f64) -> Result<ScalarField> {
    let op = ShiftedOperator::new(rhs, lambda);
    let b: Vec<f64> = rhs.values().iter().map(|v| -v).collect();
    let mut x = vec![0.0; b.len()];
    op.solve(&b, &mut x, CG_TOLERANCE)?;
    rhs.with_values(x)
}

/// Smallest Dirichlet eigenvalue of −Δ_h on the ball mask, by inverse
/// iteration with warm-started CG solves and Rayleigh quotients.
pub fn discrete_fundamental_tone(grid: &Grid) -> Result<f64> {
    let r2 = grid.radius() * grid.radius();
    let start = ScalarField::from_fn(*grid, |x, y| (r2 - x * x - y * y).max(0.0));
    let op = ShiftedOperator::new(&start, 0.0);
    let mut x = start.into_values();
    normalize(&op, &mut x);
    let mut ax = vec![0.0; x.len()];
    op.apply(&x, &mut ax);
    let mut mu = op.dot(&x, &ax);
    for _ in 0..TONE_MAX_STEPS {
        let mut y: Vec<f64> = x.iter().map(|v| v / mu).collect();
        op.solve(&x, &mut y, 1e-11)?;
        normalize(&op, &mut y);
        op.apply(&y, &mut ax);
        let next = op.dot(&y, &ax);
        x = y;
        if (next - mu).abs() <= TONE_TOLERANCE * next {
            return Ok(next);
        }
        mu = next;
    }
    Err(Error::EigNoConverge(TONE_MAX_STEPS))
}

fn normalize(op: &ShiftedOperator, x: &mut [f64]) {
    let norm = op.dot(x, x).sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
}
