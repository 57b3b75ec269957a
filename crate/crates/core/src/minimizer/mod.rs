//! Exact coordinate minimization of the discrete one-phase energy
//!
//! ```text
//! J_h(u) = Σ_edges (u_a − u_b)² + h²·Σ_nodes (−λu² − 2fu + g²·1{u > τ})
//! ```
//!
//! over nonnegative nodal fields vanishing on the Dirichlet mask.

mod comparison;
mod diagnostics;

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;

use crate::field::{
    discrete_fundamental_tone, extract_boundary, integrate, solve_shifted_poisson, BoundaryCurve,
    Grid, NodeSet, ScalarField,
};
use crate::radial::RadialParams;
use crate::{Error, Result};

pub use comparison::{compare_energies, lambda_sweep, ComparisonEnergies, LambdaSweep, SweepPoint};
pub use diagnostics::{
    bernoulli_residual, coercivity_witness, el_residual, normal_derivatives, positivity_density,
    CoercivityWitness, DensityReport, DeviationReport, NormalDerivative,
};

/// Safety factor on λ relative to the discrete tone.
pub const LAMBDA_SAFETY: f64 = 0.9;
pub const MAX_SWEEPS: usize = 100_000;
const ENERGY_TOLERANCE: f64 = 1e-12;
const CHANGE_TOLERANCE: f64 = 1e-11;
pub const WARM_START_SMOOTHING: f64 = 4.0;

/// Discrete Dirichlet tone of the ball mask, memoized per grid.
pub fn discrete_tone(grid: &Grid) -> Result<f64> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u64), f64>>> = OnceLock::new();
    let key = (grid.m(), grid.radius().to_bits());
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&tone) = cache.lock().expect("tone cache").get(&key) {
        return Ok(tone);
    }
    let tone = discrete_fundamental_tone(grid)?;
    cache.lock().expect("tone cache").insert(key, tone);
    Ok(tone)
}

/// τ = 1e−12·‖f‖∞·R², the cutoff that defines the discrete positivity set.
pub fn positivity_threshold(f: &ScalarField) -> f64 {
    1e-12 * f.max_abs() * f.grid().radius().powi(2)
}

/// The planar radial problem on an m×m grid over B_R: μ = a·χ_{B_{r1}} by cell
/// coverage, h ≡ b, f = μ − h and g sampled from the profile at each node.
#[derive(Clone, Debug)]
pub struct RadialGridProblem {
    pub spec: EnergySpec,
    pub mu: ScalarField,
    pub h: ScalarField,
}

impl RadialGridProblem {
    pub fn new(params: &RadialParams, m: usize) -> Result<Self> {
        params.validate()?;
        if params.n != 2 {
            return Err(Error::InvalidParams(format!(
                "grid problems are planar, got n = {}",
                params.n
            )));
        }
        let grid = Grid::new(params.radius, m)?;
        let mu = ScalarField::disk_coverage(grid, [0.0, 0.0], params.r1).map(|c| params.a * c);
        let h = ScalarField::from_fn(grid, |_, _| params.b);
        let f = mu.map(|v| v - params.b);
        let g = ScalarField::from_fn(grid, |x, y| params.g.eval(x.hypot(y)));
        Ok(Self {
            spec: EnergySpec::new(params.lambda, f, g)?,
            mu,
            h,
        })
    }
}

#[derive(Clone, Debug)]
pub struct EnergySpec {
    lambda: f64,
    f: ScalarField,
    g: ScalarField,
    tone: f64,
    tau: f64,
}

impl EnergySpec {
    pub fn new(lambda: f64, f: ScalarField, g: ScalarField) -> Result<Self> {
        f.same_grid(&g)?;
        if g.values().iter().any(|&v| v < 0.0) {
            return Err(Error::InvalidParams(
                "g must be nonnegative at every node".into(),
            ));
        }
        let tone = discrete_tone(f.grid())?;
        let spec = Self {
            lambda,
            tau: positivity_threshold(&f),
            f,
            g,
            tone,
        };
        spec.check_lambda(lambda)?;
        Ok(spec)
    }

    fn check_lambda(&self, lambda: f64) -> Result<()> {
        if !(lambda >= 0.0) || !(lambda < LAMBDA_SAFETY * self.tone) {
            return Err(Error::InvalidParams(format!(
                "lambda = {lambda} must satisfy 0 <= lambda < {LAMBDA_SAFETY}·λ*_h = {}",
                LAMBDA_SAFETY * self.tone
            )));
        }
        Ok(())
    }

    pub fn with_lambda(&self, lambda: f64) -> Result<Self> {
        self.check_lambda(lambda)?;
        Ok(Self {
            lambda,
            ..self.clone()
        })
    }

    pub(crate) fn with_tau(&self, tau: f64) -> Self {
        Self {
            tau,
            ..self.clone()
        }
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn f(&self) -> &ScalarField {
        &self.f
    }

    pub fn g(&self) -> &ScalarField {
        &self.g
    }

    pub fn grid(&self) -> &Grid {
        self.f.grid()
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn discrete_tone(&self) -> f64 {
        self.tone
    }

    /// F·v with F = ‖f₊‖∞ and (Δ_h+λ)v = −1, an upper bound for every minimizer.
    pub fn barrier(&self) -> Result<ScalarField> {
        let f_plus = self.f.values().iter().fold(0.0f64, |acc, &v| acc.max(v));
        if f_plus == 0.0 {
            return Ok(self.f.map(|_| 0.0));
        }
        let minus_one = self.f.map(|_| -1.0);
        let v = solve_shifted_poisson(&minus_one, self.lambda)?;
        Ok(v.map(|x| (f_plus * x).max(0.0)))
    }
}

pub fn energy(spec: &EnergySpec, u: &ScalarField) -> Result<f64> {
    spec.f.same_grid(u)?;
    if !u.is_admissible() {
        return Err(Error::Precondition(
            "energy needs a nonnegative field".into(),
        ));
    }
    Ok(energy_unchecked(spec, u.values()))
}

fn energy_unchecked(spec: &EnergySpec, u: &[f64]) -> f64 {
    let g = spec.grid();
    let m = g.m();
    let h2 = g.h() * g.h();
    let (f, gv) = (spec.f.values(), spec.g.values());
    let mut total = 0.0;
    for idx in 0..g.len() {
        let (i, j) = (idx % m, idx / m);
        if i + 1 < m {
            total += (u[idx + 1] - u[idx]).powi(2);
        }
        if j + 1 < m {
            total += (u[idx + m] - u[idx]).powi(2);
        }
        let t = u[idx];
        let indicator = if t > spec.tau { gv[idx] * gv[idx] } else { 0.0 };
        total += h2 * (-spec.lambda * t * t - 2.0 * f[idx] * t + indicator);
    }
    total
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepOrder {
    /// Lexicographic sweeps alternating with reverse sweeps; sequential.
    Symmetric,
    /// Red nodes then black nodes, each colour updated in parallel.
    RedBlack,
}

#[derive(Clone, Debug)]
pub struct MinimizeOptions {
    pub order: SweepOrder,
    pub max_sweeps: usize,
    /// Over-relaxation factor for the positive-phase updates. `None` picks
    /// the optimal SOR factor for the grid; `Some(1.0)` is plain Gauss–Seidel.
    pub relaxation: Option<f64>,
    /// Starting field; defaults to the barrier.
    pub initial: Option<ScalarField>,
    /// Width factor c of the smoothed warm start, which replaces 1{u>τ} by
    /// min(u/(c·g·h), 1) before the exact descent. Zero disables it.
    pub smoothing: f64,
}

impl Default for MinimizeOptions {
    fn default() -> Self {
        Self {
            order: SweepOrder::Symmetric,
            max_sweeps: MAX_SWEEPS,
            relaxation: None,
            initial: None,
            smoothing: WARM_START_SMOOTHING,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogEntry {
    pub sweep: usize,
    pub energy: f64,
    pub positive_nodes: usize,
}

#[derive(Clone, Debug)]
pub struct MinimizeResult {
    pub u: ScalarField,
    pub energy: f64,
    pub sweeps: usize,
    pub positivity_mask: NodeSet,
    pub boundary: BoundaryCurve,
    pub log: Vec<LogEntry>,
    /// F·v, the upper bound every iterate respects.
    pub barrier: ScalarField,
    /// Largest change of one extra exact sweep, relative to ‖u‖∞.
    pub fixed_point_defect: f64,
    /// Largest energy increase seen across a single coordinate update.
    pub max_update_increase: f64,
}

impl MinimizeResult {
    /// Median |midpoint| over boundary segments.
    pub fn positivity_radius(&self) -> Option<f64> {
        let mut r: Vec<f64> = self
            .boundary
            .segments
            .iter()
            .map(|s| s.midpoint[0].hypot(s.midpoint[1]))
            .collect();
        if r.is_empty() {
            return None;
        }
        r.sort_by(f64::total_cmp);
        Some(r[r.len() / 2])
    }

    pub fn l2_norm(&self) -> f64 {
        integrate(&self.u.map(|v| v * v)).sqrt()
    }
}

pub fn minimize(spec: &EnergySpec) -> Result<MinimizeResult> {
    minimize_with(spec, &MinimizeOptions::default())
}

/// Per-node coefficients of q(t) = αt² − βt + γ·1{t>τ}. With a positive
/// `smoothing` c the indicator is replaced by min(t/ε, 1), ε = c·g·h.
#[derive(Clone)]
struct Kernel<'a> {
    m: usize,
    alpha: f64,
    tau: f64,
    fh2: Vec<f64>,
    gamma: Vec<f64>,
    upper: &'a [f64],
    smoothing: f64,
}

#[derive(Clone, Copy, Default)]
struct Step {
    value: f64,
    delta_energy: f64,
    delta_positive: isize,
}

impl Kernel<'_> {
    fn width(&self, idx: usize) -> f64 {
        self.smoothing * self.gamma[idx].sqrt()
    }

    fn penalty(&self, idx: usize, t: f64) -> f64 {
        let eps = self.width(idx);
        if eps > 0.0 {
            self.gamma[idx] * (t.max(0.0) / eps).min(1.0)
        } else if t > self.tau {
            self.gamma[idx]
        } else {
            0.0
        }
    }

    /// Which smooth branch of q contains t.
    fn branch(&self, idx: usize, t: f64) -> bool {
        let eps = self.width(idx);
        if eps > 0.0 {
            t >= eps
        } else {
            t > self.tau
        }
    }

    /// q(t) − q(s), factored so that nearby arguments do not cancel.
    fn dq(&self, idx: usize, beta: f64, t: f64, s: f64) -> f64 {
        (t - s) * (self.alpha * (t + s) - beta) + self.penalty(idx, t) - self.penalty(idx, s)
    }

    /// Exact minimizer of q on t ≥ 0, and whether it is the vertex of the
    /// parabola on its branch.
    fn exact(&self, idx: usize, beta: f64) -> (f64, bool) {
        let t_hat = (beta / (2.0 * self.alpha)).max(0.0);
        let eps = self.width(idx);
        if eps > 0.0 {
            let vertex_low = (beta - self.gamma[idx] / eps) / (2.0 * self.alpha);
            let low = vertex_low.clamp(0.0, eps);
            let high = t_hat.max(eps);
            if self.dq(idx, beta, high, low) < 0.0 {
                (high, high == t_hat)
            } else {
                (low, low == vertex_low)
            }
        } else if t_hat > 0.0 && self.dq(idx, beta, t_hat, 0.0) < 0.0 {
            (t_hat, true)
        } else {
            (0.0, false)
        }
    }

    fn update(&self, u: &[f64], idx: usize, omega: f64) -> Step {
        let m = self.m;
        let neighbours = u[idx - 1] + u[idx + 1] + u[idx - m] + u[idx + m];
        let beta = 2.0 * (neighbours + self.fh2[idx]);
        let old = u[idx];
        let (exact, vertex) = self.exact(idx, beta);
        let mut value = exact;
        if omega != 1.0 && vertex {
            // On one branch q is a parabola centred on `exact`, so any
            // relaxation factor in (0, 2) cannot raise it.
            let candidate = (old + omega * (exact - old)).clamp(0.0, self.upper[idx].max(exact));
            let branch = |t: f64| self.branch(idx, t);
            if branch(candidate) == branch(exact)
                && (branch(old) == branch(exact) || self.dq(idx, beta, candidate, old) <= 0.0)
            {
                value = candidate;
            }
        }
        let positive = |t: f64| (t > self.tau) as isize;
        Step {
            value,
            delta_energy: self.dq(idx, beta, value, old),
            delta_positive: positive(value) - positive(old),
        }
    }
}

struct SweepStats {
    delta_energy: f64,
    delta_positive: isize,
    max_change: f64,
    max_increase: f64,
}

fn sweep(
    kernel: &Kernel,
    u: &mut [f64],
    active: &[usize],
    order: SweepOrder,
    parity: usize,
    omega: f64,
) -> SweepStats {
    let mut stats = SweepStats {
        delta_energy: 0.0,
        delta_positive: 0,
        max_change: 0.0,
        max_increase: 0.0,
    };
    let record = |stats: &mut SweepStats, step: &Step, old: f64| {
        stats.delta_energy += step.delta_energy;
        stats.delta_positive += step.delta_positive;
        stats.max_change = stats.max_change.max((step.value - old).abs());
        stats.max_increase = stats.max_increase.max(step.delta_energy);
    };
    match order {
        SweepOrder::Symmetric => {
            let mut visit = |idx: usize| {
                let step = kernel.update(u, idx, omega);
                let old = u[idx];
                u[idx] = step.value;
                record(&mut stats, &step, old);
            };
            if parity % 2 == 0 {
                active.iter().for_each(|&i| visit(i));
            } else {
                active.iter().rev().for_each(|&i| visit(i));
            }
        }
        SweepOrder::RedBlack => {
            let m = kernel.m;
            for colour in 0..2 {
                let shared: &[f64] = u;
                let updates: Vec<Vec<(usize, Step)>> = active
                    .par_chunks(m)
                    .map(|chunk| {
                        chunk
                            .iter()
                            .filter(|&&idx| (idx % m + idx / m) % 2 == colour)
                            .map(|&idx| (idx, kernel.update(shared, idx, omega)))
                            .collect()
                    })
                    .collect();
                for (idx, step) in updates.into_iter().flatten() {
                    let old = u[idx];
                    u[idx] = step.value;
                    record(&mut stats, &step, old);
                }
            }
        }
    }
    stats
}

pub fn minimize_with(spec: &EnergySpec, options: &MinimizeOptions) -> Result<MinimizeResult> {
    let grid = *spec.grid();
    let h2 = grid.h() * grid.h();
    let barrier = spec.barrier()?;
    let mut u: Vec<f64> = match &options.initial {
        Some(init) => {
            spec.f.same_grid(init)?;
            init.values().iter().map(|&v| v.max(0.0)).collect()
        }
        None => barrier.values().to_vec(),
    };
    let active: Vec<usize> = (0..grid.len())
        .filter(|&i| !spec.f.is_masked(i) && !grid.on_box_edge(i))
        .collect();
    for (idx, v) in u.iter_mut().enumerate() {
        if spec.f.is_masked(idx) || grid.on_box_edge(idx) {
            *v = 0.0;
        }
    }
    let kernel = Kernel {
        m: grid.m(),
        alpha: 4.0 - spec.lambda * h2,
        tau: spec.tau,
        fh2: spec.f.values().iter().map(|f| f * h2).collect(),
        gamma: spec.g.values().iter().map(|g| g * g * h2).collect(),
        upper: barrier.values(),
        smoothing: 0.0,
    };
    let auto_omega = 2.0 / (1.0 + (std::f64::consts::PI * grid.h() / (2.0 * grid.radius())).sin());
    let mut omega = options.relaxation.unwrap_or(auto_omega);
    if !(omega > 0.0 && omega < 2.0) {
        return Err(Error::InvalidParams(format!(
            "relaxation factor {omega} must lie in (0, 2)"
        )));
    }

    let mut sweeps = 0;
    let smoothing = options.smoothing;
    if !(smoothing >= 0.0 && smoothing.is_finite()) {
        return Err(Error::InvalidParams(format!(
            "smoothing {smoothing} must be finite and nonnegative"
        )));
    }
    if smoothing > 0.0 && kernel.gamma.iter().any(|&g| g > 0.0) {
        // Warm start on the smoothed energy: pure coordinate descent on the
        // indicator stalls wherever the boundary slope lies within a factor
        // of about two of g.
        let smoothed = Kernel {
            smoothing,
            ..kernel.clone()
        };
        let mut energy = 0.0;
        while sweeps < options.max_sweeps {
            let stats = sweep(&smoothed, &mut u, &active, options.order, sweeps, omega);
            sweeps += 1;
            energy += stats.delta_energy;
            let scale = u
                .iter()
                .fold(0.0f64, |a, &v| a.max(v))
                .max(f64::MIN_POSITIVE);
            if -stats.delta_energy <= ENERGY_TOLERANCE * energy.abs().max(scale * scale)
                && stats.max_change <= CHANGE_TOLERANCE * scale
            {
                break;
            }
        }
    }

    let mut current = energy_unchecked(spec, &u);
    let mut positive = u.iter().filter(|&&t| t > spec.tau).count() as isize;
    let mut log = vec![LogEntry {
        sweep: sweeps,
        energy: current,
        positive_nodes: positive as usize,
    }];
    let mut max_increase: f64 = 0.0;
    let mut converged = false;
    while sweeps < options.max_sweeps {
        let stats = sweep(&kernel, &mut u, &active, options.order, sweeps, omega);
        sweeps += 1;
        current += stats.delta_energy;
        positive += stats.delta_positive;
        max_increase = max_increase.max(stats.max_increase);
        log.push(LogEntry {
            sweep: sweeps,
            energy: current,
            positive_nodes: positive as usize,
        });
        let scale = u
            .iter()
            .fold(0.0f64, |a, &v| a.max(v))
            .max(f64::MIN_POSITIVE);
        let settled = -stats.delta_energy <= ENERGY_TOLERANCE * current.abs()
            && stats.max_change <= CHANGE_TOLERANCE * scale;
        if settled {
            if omega == 1.0 {
                converged = true;
                break;
            }
            // Polish with plain exact updates so the result is a fixed point of
            // the pointwise minimization itself.
            omega = 1.0;
        }
    }

    let mut probe = u.clone();
    let mut defect: f64 = 0.0;
    for &idx in &active {
        let step = kernel.update(&probe, idx, 1.0);
        defect = defect.max((step.value - probe[idx]).abs());
        probe[idx] = step.value;
    }
    let scale = u.iter().fold(0.0f64, |a, &v| a.max(v));
    let field = spec.f.with_values(u)?;
    let positivity_mask = field.threshold_set(spec.tau);
    let boundary = if positivity_mask.count() > 0 {
        extract_boundary(&positivity_mask)?
    } else {
        BoundaryCurve::default()
    };
    let result = MinimizeResult {
        energy: energy_unchecked(spec, field.values()),
        u: field,
        sweeps,
        positivity_mask,
        boundary,
        log,
        barrier,
        fixed_point_defect: if scale > 0.0 { defect / scale } else { defect },
        max_update_increase: max_increase,
    };
    if converged {
        Ok(result)
    } else {
        Err(Error::NoConverge {
            sweeps,
            last: Box::new(result),
        })
    }
}
