//! Hybrid k-quadrature domains for the Helmholtz operator.
//!
//! The crate minimizes the one-phase free-boundary energy
//! `J(u) = ∫ |∇u|² − λu² − 2fu + g²χ{u>0}` over nonnegative functions on a
//! ball, compares the result with the closed-form radial Bessel solution, and
//! checks the quadrature and non-scattering identities satisfied by the
//! positivity set of a minimizer.

pub mod bessel;
pub mod cli;
pub mod error;
pub mod field;
pub mod minimizer;
pub mod quadrature;
pub mod radial;
pub mod scattering;

pub use error::{Error, Result};

/// Γ(ν) for the half-integer and integer arguments used by n ∈ {2, 3}.
pub(crate) fn gamma_half(twice_arg: u32) -> f64 {
    let sqrt_pi = std::f64::consts::PI.sqrt();
    match twice_arg {
        1 => sqrt_pi,
        2 => 1.0,
        3 => 0.5 * sqrt_pi,
        4 => 1.0,
        5 => 0.75 * sqrt_pi,
        6 => 2.0,
        _ => unreachable!("Γ({}/2) is not needed", twice_arg),
    }
}

pub(crate) fn check_dimension(n: usize) -> Result<()> {
    if n == 2 || n == 3 {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!(
            "dimension n = {n} must be 2 or 3"
        )))
    }
}
