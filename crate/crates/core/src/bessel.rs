//! Bessel functions of the first and second kind for ν ∈ {0, 1/2, 1, 3/2}.
//!
//! Integer orders use the power series up to x = 8 and Miller's backward
//! recurrence beyond it. Y₀ and Y₁ come from the Neumann series over the
//! recurrence values. Half-integer orders use their trigonometric closed forms.

use std::f64::consts::{FRAC_2_PI, PI};

use crate::{Error, Result};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const SERIES_LIMIT: f64 = 8.0;

/// A Bessel order ν stored as the integer 2ν.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BesselOrder {
    twice_order: u32,
}

impl BesselOrder {
    pub const ZERO: Self = Self { twice_order: 0 };
    pub const HALF: Self = Self { twice_order: 1 };
    pub const ONE: Self = Self { twice_order: 2 };
    pub const THREE_HALVES: Self = Self { twice_order: 3 };

    pub fn new(twice_order: u32) -> Result<Self> {
        if twice_order <= 3 {
            Ok(Self { twice_order })
        } else {
            Err(Error::InvalidOrder(twice_order))
        }
    }

    /// ν = (n − 2)/2, the order of the regular radial Helmholtz solution.
    pub fn inner(n: usize) -> Result<Self> {
        crate::check_dimension(n)?;
        Self::new(n as u32 - 2)
    }

    /// ν = n/2.
    pub fn outer(n: usize) -> Result<Self> {
        crate::check_dimension(n)?;
        Self::new(n as u32)
    }

    pub fn twice_order(self) -> u32 {
        self.twice_order
    }

    pub fn nu(self) -> f64 {
        self.twice_order as f64 / 2.0
    }
}

/// J_ν(x) for x ≥ 0. Negative arguments return NaN.
pub fn bessel_j(order: BesselOrder, x: f64) -> f64 {
    if !(x >= 0.0) {
        return f64::NAN;
    }
    match order.twice_order {
        0 => integer_j(0, x),
        2 => integer_j(1, x),
        1 => {
            if x == 0.0 {
                0.0
            } else {
                (2.0 / (PI * x)).sqrt() * x.sin()
            }
        }
        3 => {
            if x == 0.0 {
                0.0
            } else {
                (2.0 / (PI * x)).sqrt() * sin_over_x_minus_cos(x)
            }
        }
        _ => unreachable!(),
    }
}

/// Y_ν(x) for x > 0.
pub fn bessel_y(order: BesselOrder, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!(
            "Y_{} requires a positive finite argument, got {x}",
            order.nu()
        )));
    }
    Ok(y_positive(order, x))
}

/// Y_ν(x) without the domain check; callers guarantee x > 0.
pub(crate) fn y_positive(order: BesselOrder, x: f64) -> f64 {
    match order.twice_order {
        0 | 2 => {
            let (y0, y1) = neumann_y01(x);
            if order.twice_order == 0 {
                y0
            } else {
                y1
            }
        }
        1 => -(2.0 / (PI * x)).sqrt() * x.cos(),
        3 => -(2.0 / (PI * x)).sqrt() * (x.cos() / x + x.sin()),
        _ => unreachable!(),
    }
}

/// First positive zero j_{ν,1}.
pub fn first_zero(order: BesselOrder) -> f64 {
    zeros(order, 1)[0]
}

/// The first `count` positive zeros of J_ν, located by a fixed-step scan and
/// bisected to machine precision.
pub fn zeros(order: BesselOrder, count: usize) -> Vec<f64> {
    const STEP: f64 = 0.05;
    let mut out = Vec::with_capacity(count);
    let mut lo = STEP;
    let mut f_lo = bessel_j(order, lo);
    while out.len() < count {
        let hi = lo + STEP;
        let f_hi = bessel_j(order, hi);
        if f_hi == 0.0 {
            out.push(hi);
        } else if f_lo.signum() != f_hi.signum() {
            out.push(bisect(|t| bessel_j(order, t), lo, hi));
        }
        lo = hi;
        f_lo = f_hi;
    }
    out
}

/// λ*(B_R) = j²_{(n−2)/2,1} / R².
pub fn fundamental_tone_ball(n: usize, radius: f64) -> Result<f64> {
    if !(radius > 0.0) {
        return Err(Error::InvalidParams(format!(
            "ball radius must be positive, got {radius}"
        )));
    }
    let j = first_zero(BesselOrder::inner(n)?);
    Ok(j * j / (radius * radius))
}

/// Bisection on a bracketing interval until the midpoint stops moving.
pub(crate) fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn sin_over_x_minus_cos(x: f64) -> f64 {
    if x >= 0.5 {
        return x.sin() / x - x.cos();
    }
    // Σ (−1)^{m+1} 2m x^{2m} / (2m+1)!
    let x2 = x * x;
    let mut power = 1.0;
    let mut factorial = 1.0;
    let mut sum = 0.0;
    for m in 1..20u32 {
        power *= x2;
        factorial *= ((2 * m) * (2 * m + 1)) as f64;
        let term = (2 * m) as f64 * power / factorial;
        if m % 2 == 1 {
            sum += term;
        } else {
            sum -= term;
        }
        if term < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

fn integer_j(n: u32, x: f64) -> f64 {
    if x <= SERIES_LIMIT {
        series_j(n, x)
    } else {
        miller(x)[n as usize]
    }
}

fn series_j(n: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let q = half * half;
    let mut term = if n == 0 { 1.0 } else { half };
    let mut sum = term;
    for m in 1..80u32 {
        term *= -q / (m as f64 * (m + n) as f64);
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-300) {
            break;
        }
    }
    sum
}

/// J_0..J_N(x) by downward recurrence, normalized with J₀ + 2ΣJ_{2k} = 1.
fn miller(x: f64) -> Vec<f64> {
    let start = 2 * ((x.ceil() as usize + 24 + (40.0 * x).sqrt() as usize) / 2);
    let mut values = vec![0.0; start + 1];
    let mut above = 0.0;
    let mut current = 1e-30;
    values[start] = current;
    for k in (1..=start).rev() {
        let below = 2.0 * k as f64 / x * current - above;
        above = current;
        current = below;
        values[k - 1] = current;
        if current.abs() > 1e250 {
            for v in &mut values[k - 1..] {
                *v *= 1e-250;
            }
            above *= 1e-250;
            current *= 1e-250;
        }
    }
    let norm: f64 = values[0] + 2.0 * values.iter().skip(2).step_by(2).sum::<f64>();
    for v in &mut values {
        *v /= norm;
    }
    values
}

/// Y₀ and Y₁ from the Neumann series
/// Y₀ = (2/π)(ln(x/2)+γ)J₀ − (4/π)Σ(−1)^k J_{2k}/k and its derivative.
fn neumann_y01(x: f64) -> (f64, f64) {
    let j = if x <= SERIES_LIMIT {
        // The recurrence values are accurate everywhere; the series values
        // replace J₀, J₁ only to keep them identical to `bessel_j`.
        let mut v = miller(x.max(1e-300));
        v[0] = series_j(0, x);
        v[1] = series_j(1, x);
        v
    } else {
        miller(x)
    };
    let log_term = (0.5 * x).ln() + EULER_GAMMA;
    let mut s0 = 0.0;
    let mut s1 = 0.0;
    let mut k = 1;
    while 2 * k + 1 < j.len() {
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s0 += sign * j[2 * k] / k as f64;
        s1 += sign * (j[2 * k - 1] - j[2 * k + 1]) / k as f64;
        k += 1;
    }
    let y0 = FRAC_2_PI * log_term * j[0] - 2.0 * FRAC_2_PI * s0;
    let y1 = -FRAC_2_PI * j[0] / x + FRAC_2_PI * log_term * j[1] + FRAC_2_PI * s1;
    (y0, y1)
}
