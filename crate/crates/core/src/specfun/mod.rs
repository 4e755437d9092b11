//! Special functions and numerical oracles: log-gamma, polygamma, Bessel K,
//! semi-infinite quadrature and central differences.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod diff;
mod gamma;
mod quad;

pub use bessel::{bessel_k, bessel_k_half_integer, ln_bessel_k};
pub use diff::{default_step, derivative_at, derivative_richardson, stencil_reach};
pub use gamma::{digamma, log_gamma, polygamma, trigamma, MAX_POLYGAMMA_ORDER};
pub use quad::{integrate, integrate_semi_infinite, integrate_semi_infinite_scaled, Tolerance};

/// Euler–Mascheroni constant γ; ψ(1) = −γ.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
