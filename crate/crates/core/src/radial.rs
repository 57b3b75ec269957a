//! Closed-form radial minimizer for f = aχ_{B_{r1}} − b on a ball, and the
//! scalar constants of the mollified construction.
//!
//! With k = √λ and ν = (n−2)/2 the solution on (0, ρ) is
//!
//! ```text
//! u(r) = (b−a)/λ + c1·r^{−ν}J_ν(kr)
//!        + [r>r1]·(a/λ + A·r^{−ν}(Y_{ν+1}(kr1)J_ν(kr) − J_{ν+1}(kr1)Y_ν(kr)))
//! ```
//!
//! with A = aπ·r1^{n/2}/(2k); the bracketed branch vanishes to first order at
//! r1 by the Wronskian.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bessel::{
    bessel_j, bisect, first_zero, fundamental_tone_ball, y_positive, zeros, BesselOrder,
};
use crate::quadrature::gauss_legendre;
use crate::{check_dimension, gamma_half, Error, Result};

const G_SAMPLES: usize = 10_000;

/// Radial boundary density g(r), nondecreasing and zero on [0, r1].
#[derive(Clone)]
pub struct GProfile {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    label: String,
}

impl GProfile {
    pub fn zero() -> Self {
        Self::from_fn("zero", |_| 0.0)
    }

    /// g = value for r > r1, zero otherwise.
    pub fn step(value: f64, r1: f64) -> Self {
        Self::from_fn(format!("step({value}, {r1})"), move |r| {
            if r > r1 {
                value
            } else {
                0.0
            }
        })
    }

    /// g = value + slope·(r − r1) for r > r1, zero otherwise.
    pub fn ramp(value: f64, slope: f64, r1: f64) -> Self {
        Self::from_fn(format!("ramp({value}, {slope}, {r1})"), move |r| {
            if r > r1 {
                value + slope * (r - r1)
            } else {
                0.0
            }
        })
    }

    pub fn from_fn(
        label: impl Into<String>,
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            eval: Arc::new(f),
            label: label.into(),
        }
    }

    pub fn eval(&self, r: f64) -> f64 {
        (self.eval)(r)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Scaled profile r ↦ s·g(r/s), which keeps the radial problem invariant
    /// under x ↦ s·x.
    pub fn rescaled(&self, s: f64) -> Self {
        let inner = self.eval.clone();
        Self::from_fn(format!("{}∘/{s}", self.label), move |r| s * inner(r / s))
    }

    fn check(&self, r1: f64, radius: f64) -> Result<()> {
        let mut prev = f64::NEG_INFINITY;
        for i in 0..=G_SAMPLES {
            let r = radius * i as f64 / G_SAMPLES as f64;
            let g = self.eval(r);
            if !g.is_finite() || g < 0.0 {
                return Err(Error::InvalidParams(format!(
                    "g_profile({r}) = {g} must be finite and nonnegative"
                )));
            }
            if r <= r1 && g != 0.0 {
                return Err(Error::InvalidParams(format!(
                    "g_profile must vanish on [0, r1]; g({r}) = {g}"
                )));
            }
            if g < prev - 1e-12 {
                return Err(Error::InvalidParams(format!(
                    "g_profile must be nondecreasing; drops at r = {r}"
                )));
            }
            prev = g;
        }
        Ok(())
    }
}

impl fmt::Debug for GProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GProfile({})", self.label)
    }
}

#[derive(Clone, Debug)]
pub struct RadialParams {
    pub n: usize,
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub r1: f64,
    pub radius: f64,
    pub g: GProfile,
}

impl RadialParams {
    pub fn new(
        n: usize,
        lambda: f64,
        a: f64,
        b: f64,
        r1: f64,
        radius: f64,
        g: GProfile,
    ) -> Result<Self> {
        let p = Self {
            n,
            lambda,
            a,
            b,
            r1,
            radius,
            g,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_dimension(self.n)?;
        if !(self.b > 0.0) || !(self.a > self.b) || !self.a.is_finite() {
            return Err(Error::InvalidParams(format!(
                "a > b > 0 is required, got a = {}, b = {}",
                self.a, self.b
            )));
        }
        if !(self.r1 > 0.0) || !(self.r1 < self.radius) || !self.radius.is_finite() {
            return Err(Error::InvalidParams(format!(
                "0 < r1 < R is required, got r1 = {}, R = {}",
                self.r1, self.radius
            )));
        }
        let tone = fundamental_tone_ball(self.n, self.radius)?;
        if !(self.lambda > 0.0) || !(self.lambda < tone) {
            return Err(Error::InvalidParams(format!(
                "0 < lambda < λ*(B_R) = {tone} is required, got lambda = {}",
                self.lambda
            )));
        }
        self.g.check(self.r1, self.radius)
    }

    pub fn k(&self) -> f64 {
        self.lambda.sqrt()
    }

    /// f(r) = a·χ{r < r1} − b.
    pub fn source(&self, r: f64) -> f64 {
        if r < self.r1 {
            self.a - self.b
        } else {
            -self.b
        }
    }
}

#[derive(Clone, Debug)]
pub struct RadialSolution {
    pub params: RadialParams,
    pub c1: f64,
    pub rho: f64,
    pub r_prime: f64,
}

/// Shorthand for the Bessel combinations the formulas need.
struct Kernel {
    n: usize,
    k: f64,
    inner: BesselOrder,
    outer: BesselOrder,
}

impl Kernel {
    fn new(n: usize, lambda: f64) -> Result<Self> {
        Ok(Self {
            n,
            k: lambda.sqrt(),
            inner: BesselOrder::inner(n)?,
            outer: BesselOrder::outer(n)?,
        })
    }

    fn nu(&self) -> f64 {
        (self.n as f64 - 2.0) / 2.0
    }

    /// r^{−ν}·J_ν(kr), with its limit (k/2)^ν/Γ(ν+1) at r = 0.
    fn regular(&self, r: f64) -> f64 {
        if r == 0.0 {
            (0.5 * self.k).powf(self.nu()) / gamma_half(self.n as u32)
        } else {
            r.powf(-self.nu()) * bessel_j(self.inner, self.k * r)
        }
    }

    fn singular(&self, r: f64) -> f64 {
        r.powf(-self.nu()) * y_positive(self.inner, self.k * r)
    }

    /// r^{n/2}·J_{n/2}(kr).
    fn moment(&self, r: f64) -> f64 {
        r.powf(0.5 * self.n as f64) * bessel_j(self.outer, self.k * r)
    }
}

/// R′ for explicit scalars, without the RadialParams invariants.
///
/// R′ is the root of φ(ρ) = b/a − s(r1)/s(ρ), s(t) = t^{n/2}J_{n/2}(kt), on
/// (r1, R]; R′ = R when φ(R) ≤ 0.
pub fn support_radius_for(
    n: usize,
    lambda: f64,
    a: f64,
    b: f64,
    r1: f64,
    radius: f64,
) -> Result<f64> {
    let kern = Kernel::new(n, lambda)?;
    let s1 = kern.moment(r1);
    let phi = |rho: f64| b / a - s1 / kern.moment(rho);
    if phi(radius) <= 0.0 {
        return Ok(radius);
    }
    Ok(bisect(phi, r1, radius))
}

pub fn support_radius_gzero(params: &RadialParams) -> Result<f64> {
    params.validate()?;
    support_radius_for(
        params.n,
        params.lambda,
        params.a,
        params.b,
        params.r1,
        params.radius,
    )
}

/// φ(ρ) = b/a − r1^{n/2}J_{n/2}(k r1)/(ρ^{n/2}J_{n/2}(kρ)).
pub fn phi(params: &RadialParams, rho: f64) -> f64 {
    let kern = Kernel::new(params.n, params.lambda).expect("validated dimension");
    params.b / params.a - kern.moment(params.r1) / kern.moment(rho)
}

/// F(ρ) = u′(ρ) + g(ρ) for the branch with u(ρ) = 0.
pub fn free_boundary_function(params: &RadialParams, rho: f64) -> f64 {
    let kern = Kernel::new(params.n, params.lambda).expect("validated dimension");
    let num = params.b * kern.moment(rho) - params.a * kern.moment(params.r1);
    let den = rho.powf(0.5 * params.n as f64) * kern.k * bessel_j(kern.inner, kern.k * rho);
    num / den + params.g.eval(rho)
}

pub fn radial_solve(params: &RadialParams) -> Result<RadialSolution> {
    let r_prime = support_radius_gzero(params)?;
    let f = |rho: f64| free_boundary_function(params, rho);
    let lo = params.r1 * (1.0 + 1e-12);
    let f_low = f(lo);
    let f_high = f(r_prime);
    let scale = params.a / params.lambda.sqrt();
    let rho = if f_high.abs() <= 1e-12 * scale {
        r_prime
    } else if f_low < 0.0 && f_high >= 0.0 {
        bisect(f, lo, r_prime)
    } else {
        return Err(Error::NoAdmissibleSupport {
            r1: params.r1,
            r_prime,
            f_low,
            f_high,
        });
    };
    let kern = Kernel::new(params.n, params.lambda)?;
    let amp = particular_amplitude(params, &kern);
    let j_out_r1 = bessel_j(kern.outer, kern.k * params.r1);
    let y_out_r1 = y_positive(kern.outer, kern.k * params.r1);
    let c1 = (amp * j_out_r1 * kern.singular(rho) - params.b / params.lambda) / kern.regular(rho)
        - amp * y_out_r1;
    Ok(RadialSolution {
        params: params.clone(),
        c1,
        rho,
        r_prime,
    })
}

fn particular_amplitude(params: &RadialParams, kern: &Kernel) -> f64 {
    params.a * PI * params.r1.powf(0.5 * params.n as f64) / (2.0 * kern.k)
}

impl RadialSolution {
    fn kernel(&self) -> Kernel {
        Kernel::new(self.params.n, self.params.lambda).expect("validated dimension")
    }

    /// u(r); zero for r ≥ ρ.
    pub fn u(&self, r: f64) -> f64 {
        if r >= self.rho {
            return 0.0;
        }
        let p = &self.params;
        let kern = self.kernel();
        let mut value = (p.b - p.a) / p.lambda + self.c1 * kern.regular(r);
        if r > p.r1 {
            let amp = particular_amplitude(p, &kern);
            let kr1 = kern.k * p.r1;
            value += p.a / p.lambda
                + amp
                    * (y_positive(kern.outer, kr1) * kern.regular(r)
                        - bessel_j(kern.outer, kr1) * kern.singular(r));
        }
        value
    }

    /// u′(r); zero for r > ρ.
    pub fn du(&self, r: f64) -> f64 {
        if r > self.rho {
            return 0.0;
        }
        let p = &self.params;
        let kern = self.kernel();
        let scale = r.powf(-kern.nu());
        let kr = kern.k * r;
        let mut value = -self.c1 * kern.k * scale * bessel_j(kern.outer, kr);
        if r > p.r1 {
            let kr1 = kern.k * p.r1;
            let coef = p.a * PI * p.r1.powf(0.5 * p.n as f64) / 2.0;
            value -= coef
                * scale
                * (y_positive(kern.outer, kr1) * bessel_j(kern.outer, kr)
                    - bessel_j(kern.outer, kr1) * y_positive(kern.outer, kr));
        }
        value
    }

    /// J(u) = ∫(g²χ{u>0} − f·u) dx, the energy of a critical point.
    pub fn energy(&self) -> f64 {
        let p = &self.params;
        let n = p.n as i32;
        let integrand = |r: f64| (p.g.eval(r).powi(2) - p.source(r) * self.u(r)) * r.powi(n - 1);
        let r1 = p.r1.min(self.rho);
        let total = composite_gauss(&integrand, 0.0, r1, 64)
            + composite_gauss(&integrand, r1, self.rho, 256);
        sphere_area(p.n) * total
    }

    /// Max of |u″ + (n−1)u′/r + λu + f| over `count` interior points, using a
    /// central difference of the closed-form u′, relative to a + b.
    pub fn ode_residual(&self, count: usize) -> f64 {
        let p = &self.params;
        let step = 1e-5 * self.rho;
        let mut worst: f64 = 0.0;
        for i in 1..=count {
            let r = self.rho * i as f64 / (count + 1) as f64;
            if (r - p.r1).abs() < 2.0 * step || r + step >= self.rho {
                continue;
            }
            let d2 = (self.du(r + step) - self.du(r - step)) / (2.0 * step);
            let res = d2 + (p.n as f64 - 1.0) / r * self.du(r) + p.lambda * self.u(r) + p.source(r);
            worst = worst.max(res.abs());
        }
        worst / (p.a + p.b)
    }
}

/// Energy of the Dirichlet problem (Δ+λ)u = −f0 in B_ρ, u = 0 on ∂B_ρ, for a
/// constant source f0. Equals −f0∫u, so it is negative whenever f0 > 0.
pub fn dirichlet_ball_energy(n: usize, f0: f64, lambda: f64, rho: f64) -> Result<f64> {
    let kern = Kernel::new(n, lambda)?;
    let volume = ball_volume(n, rho);
    let regular_integral = sphere_area(n) * kern.moment(rho) / kern.k;
    Ok(-(f0 * f0 / lambda) * (regular_integral / kern.regular(rho) - volume))
}

/// c^{MVT} = (2π)^{n/2}k^{−n/2}r^{n/2}J_{n/2}(kr), so that ∫_{B_r} w = c^{MVT}·w(0)
/// for every solution of (Δ+k²)w = 0.
pub fn mvt_constant(n: usize, k: f64, radius: f64) -> Result<f64> {
    let inner = BesselOrder::inner(n)?;
    if !(k > 0.0) || !(radius > 0.0) {
        return Err(Error::Domain(format!(
            "k and radius must be positive, got k = {k}, r = {radius}"
        )));
    }
    if k * radius >= first_zero(inner) {
        return Err(Error::Domain(format!(
            "k·radius = {} must stay below j_(n−2)/2,1 = {}",
            k * radius,
            first_zero(inner)
        )));
    }
    Ok(mvt_unchecked(n, k, radius))
}

fn mvt_unchecked(n: usize, k: f64, radius: f64) -> f64 {
    let half_n = 0.5 * n as f64;
    let outer = BesselOrder::outer(n).expect("validated dimension");
    (2.0 * PI).powf(half_n) * k.powf(-half_n) * radius.powf(half_n) * bessel_j(outer, k * radius)
}

/// Sufficient mass for the large-mass condition: C_n·b0·εⁿ.
pub fn mass_threshold(n: usize, b0: f64, eps: f64) -> Result<f64> {
    check_dimension(n)?;
    if !(b0 > 0.0) || !(eps > 0.0) {
        return Err(Error::InvalidParams(format!(
            "b0 and eps must be positive, got {b0}, {eps}"
        )));
    }
    Ok(mass_constant(n)? * b0 * eps.powi(n as i32))
}

/// C_n = 2ⁿ(3π)^{n/2}/Γ(1+n/2) · J_{n/2}(j)/J_{n/2}(j/3), j = j_{(n−2)/2,1}.
pub fn mass_constant(n: usize) -> Result<f64> {
    let j = first_zero(BesselOrder::inner(n)?);
    let outer = BesselOrder::outer(n)?;
    let half_n = 0.5 * n as f64;
    Ok(
        2f64.powi(n as i32) * (3.0 * PI).powf(half_n) / gamma_half(n as u32 + 2)
            * bessel_j(outer, j)
            / bessel_j(outer, j / 3.0),
    )
}

/// C_{n,β} = (4π/3)^{n/2}β^{n/2}J_{n/2}(β)·J_{n/2}(2j/3)/J_{n/2}(j).
pub fn frequency_constant(n: usize, beta: f64) -> Result<f64> {
    let j = first_zero(BesselOrder::inner(n)?);
    if !(beta > 0.0 && beta < j) {
        return Err(Error::Domain(format!("beta = {beta} must lie in (0, {j})")));
    }
    let outer = BesselOrder::outer(n)?;
    let half_n = 0.5 * n as f64;
    Ok((4.0 * PI / 3.0).powf(half_n)
        * beta.powf(half_n)
        * bessel_j(outer, beta)
        * bessel_j(outer, 2.0 * j / 3.0)
        / bessel_j(outer, j))
}

/// k_max = min{1/3, (C_{n,β}·b/mass)^{1/n}}.
pub fn frequency_threshold(n: usize, beta: f64, b: f64, mass: f64) -> Result<f64> {
    let c = frequency_constant(n, beta)?;
    if !(b > 0.0) || !(mass > 0.0) {
        return Err(Error::InvalidParams(format!(
            "b and mass must be positive, got {b}, {mass}"
        )));
    }
    Ok((1.0 / 3.0f64).min((c * b / mass).powf(1.0 / n as f64)))
}

/// Chain parameters of the mollified construction for a measure of total
/// `mass` supported in B_ε: r1 = ε, r2 = 3ε, a = a0 = mass/c^{MVT}(2ε),
/// λ = k² and R = β/k.
pub fn mollified_chain(
    n: usize,
    beta: f64,
    eps: f64,
    b: f64,
    b0: f64,
    mass: f64,
    k: f64,
) -> Result<ChainParams> {
    check_dimension(n)?;
    if !(eps > 0.0 && eps < beta) {
        return Err(Error::InvalidParams(format!(
            "0 < eps < beta is required, got eps = {eps}, beta = {beta}"
        )));
    }
    if !(mass > 0.0) || !(k > 0.0) {
        return Err(Error::InvalidParams(format!(
            "mass and k must be positive, got {mass}, {k}"
        )));
    }
    let a = mass / mvt_constant(n, k, 2.0 * eps)?;
    Ok(ChainParams {
        n,
        lambda: k * k,
        a,
        a0: a,
        b,
        b0,
        r1: eps,
        r2: 3.0 * eps,
        radius: beta / k,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Clause {
    pub name: &'static str,
    pub passed: bool,
    pub slack: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityReport {
    pub clauses: Vec<Clause>,
    /// R′ computed with (b/a, r2).
    pub r_prime_outer: Option<f64>,
    /// R′ computed with (b0/a0, r1).
    pub r_prime_inner: Option<f64>,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ChainParams {
    pub n: usize,
    pub lambda: f64,
    pub a: f64,
    pub a0: f64,
    pub b: f64,
    pub b0: f64,
    pub r1: f64,
    pub r2: f64,
    pub radius: f64,
}

pub fn check_admissibility(p: &ChainParams) -> Result<AdmissibilityReport> {
    check_dimension(p.n)?;
    let tone = fundamental_tone_ball(p.n, p.radius)?;
    let mut clauses = Vec::new();
    let mut push = |name, slack: f64, strict: bool| {
        let passed = if strict { slack > 0.0 } else { slack >= 0.0 };
        clauses.push(Clause {
            name,
            passed,
            slack,
        });
    };
    push(
        "0 < lambda < lambda*(B_R)",
        (p.lambda).min(tone - p.lambda),
        true,
    );
    push(
        "0 < r1 <= r2",
        p.r1.min(p.r2 - p.r1 + f64::MIN_POSITIVE),
        true,
    );
    push("r2 < R", p.radius - p.r2, true);
    push("0 < b <= b0", p.b.min(p.b0 - p.b + f64::MIN_POSITIVE), true);
    push("b0 < a0", p.a0 - p.b0, true);
    push("a0 <= a", p.a - p.a0, false);

    // The ratios only need s(t) = t^{n/2}J_{n/2}(kt) > 0 on (0, R].
    let outer_zero = first_zero(BesselOrder::outer(p.n)?);
    let ratios_defined =
        p.lambda > 0.0 && p.r1 > 0.0 && p.r2 < p.radius && p.lambda.sqrt() * p.radius < outer_zero;
    let (mut r_prime_outer, mut r_prime_inner) = (None, None);
    if ratios_defined {
        let kern = Kernel::new(p.n, p.lambda)?;
        let (s1, s2, sr) = (kern.moment(p.r1), kern.moment(p.r2), kern.moment(p.radius));
        push("s(r1)/s(r2) > b0/a0", s1 / s2 - p.b0 / p.a0, true);
        push("b0/a0 >= b/a", p.b0 / p.a0 - p.b / p.a, false);
        push("b/a > s(r2)/s(R)", p.b / p.a - s2 / sr, true);
        if p.a > p.b {
            r_prime_outer = Some(support_radius_for(p.n, p.lambda, p.a, p.b, p.r2, p.radius)?);
        }
        if p.a0 > p.b0 {
            r_prime_inner = Some(support_radius_for(
                p.n, p.lambda, p.a0, p.b0, p.r1, p.radius,
            )?);
        }
    } else {
        for name in ["s(r1)/s(r2) > b0/a0", "b0/a0 >= b/a", "b/a > s(r2)/s(R)"] {
            push(name, f64::NAN, true);
        }
    }
    Ok(AdmissibilityReport {
        clauses,
        r_prime_outer,
        r_prime_inner,
    })
}

/// The first `count` radii r with J_{n/2}(kr) = 0.
pub fn null_quadrature_radii(n: usize, k: f64, count: usize) -> Result<Vec<f64>> {
    let outer = BesselOrder::outer(n)?;
    if count == 0 || count > 8 {
        return Err(Error::InvalidParams(format!(
            "count must lie in 1..=8, got {count}"
        )));
    }
    if !(k > 0.0) {
        return Err(Error::InvalidParams(format!("k must be positive, got {k}")));
    }
    Ok(zeros(outer, count).into_iter().map(|z| z / k).collect())
}

pub fn ball_volume(n: usize, radius: f64) -> f64 {
    match n {
        2 => PI * radius * radius,
        _ => 4.0 / 3.0 * PI * radius.powi(3),
    }
}

pub fn sphere_area(n: usize) -> f64 {
    match n {
        2 => 2.0 * PI,
        _ => 4.0 * PI,
    }
}

fn composite_gauss(f: &impl Fn(f64) -> f64, lo: f64, hi: f64, panels: usize) -> f64 {
    if hi <= lo {
        return 0.0;
    }
    let (nodes, weights) = gauss_legendre(16);
    let width = (hi - lo) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = lo + (p as f64 + 0.5) * width;
        for (x, w) in nodes.iter().zip(&weights) {
            total += w * f(mid + 0.5 * width * x);
        }
    }
    0.5 * width * total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn acceptance_params(g: f64) -> RadialParams {
        let g = if g == 0.0 {
            GProfile::zero()
        } else {
            GProfile::step(g, 0.25)
        };
        RadialParams::new(2, 2.0, 10.0, 1.0, 0.25, 1.0, g).unwrap()
    }

    #[test]
    fn boundary_conditions_hold() {
        for g in [0.0, 0.2] {
            let sol = radial_solve(&acceptance_params(g)).unwrap();
            assert!(sol.u(sol.rho * (1.0 - 1e-15)).abs() < 1e-10);
            assert!((sol.du(sol.rho) + sol.params.g.eval(sol.rho)).abs() < 1e-10);
            assert!(sol.c1 > 0.0);
            assert!(sol.rho > 0.25 && sol.rho <= sol.r_prime);
        }
    }

    #[test]
    fn c1_continuity_at_r1() {
        let sol = radial_solve(&acceptance_params(0.2)).unwrap();
        let e = 1e-9;
        assert!((sol.u(0.25 + e) - sol.u(0.25 - e)).abs() < 1e-8);
        assert!((sol.du(0.25 + e) - sol.du(0.25 - e)).abs() < 1e-7);
    }

    #[test]
    fn ode_holds() {
        let sol = radial_solve(&acceptance_params(0.2)).unwrap();
        assert!(sol.ode_residual(200) < 1e-6);
    }

    #[test]
    fn invalid_params_rejected() {
        assert!(RadialParams::new(2, 2.0, 1.0, 1.0, 0.25, 1.0, GProfile::zero()).is_err());
        assert!(RadialParams::new(2, 6.0, 10.0, 1.0, 0.25, 1.0, GProfile::zero()).is_err());
        assert!(RadialParams::new(2, 2.0, 10.0, 1.0, 1.25, 1.0, GProfile::zero()).is_err());
        let dropping = GProfile::from_fn("drop", |r| if r > 0.25 { 1.0 - r } else { 0.0 });
        assert!(RadialParams::new(2, 2.0, 10.0, 1.0, 0.25, 1.0, dropping).is_err());
        let early = GProfile::from_fn("early", |_| 0.1);
        assert!(RadialParams::new(2, 2.0, 10.0, 1.0, 0.25, 1.0, early).is_err());
    }

    #[test]
    fn large_g_has_no_support() {
        let p = acceptance_params(50.0);
        assert!(matches!(
            radial_solve(&p),
            Err(Error::NoAdmissibleSupport { .. })
        ));
    }

    #[test]
    fn energy_of_dirichlet_ball_is_negative() {
        for n in [2, 3] {
            let e = dirichlet_ball_energy(n, 3.0, 1.5, 0.9).unwrap();
            assert!(e < 0.0);
        }
    }

    #[test]
    fn admissibility_example_passes() {
        let report = check_admissibility(&ChainParams {
            n: 2,
            lambda: 1.0,
            a: 20.0,
            a0: 20.0,
            b: 1.0,
            b0: 1.0,
            r1: 0.2,
            r2: 0.3,
            radius: 3.0,
        })
        .unwrap();
        // λ = 1 exceeds λ*(B_3) ≈ 0.643; every other clause holds.
        for c in &report.clauses {
            assert_eq!(c.passed, c.name != "0 < lambda < lambda*(B_R)", "{c:?}");
        }
    }
}
