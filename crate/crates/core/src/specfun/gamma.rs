//! Log-gamma and the polygamma family ψ^(m).
//!
//! Both use the same scheme: shift the argument upward with the functional
//! recurrence until it clears [`ASYMPTOTIC_THRESHOLD`], then sum the
//! Bernoulli-number asymptotic series. Within 1/4 of the zeros of ln Γ at 1
//! and 2, ln Γ is instead the integral of ψ from the zero.

use crate::error::{Error, Result};
use crate::specfun::{integrate, Tolerance};

/// Highest polygamma order supported by [`polygamma`].
pub const MAX_POLYGAMMA_ORDER: usize = 6;

const ASYMPTOTIC_THRESHOLD: f64 = 15.0;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// Bernoulli numbers B_2, B_4, ..., B_30.
const BERNOULLI_EVEN: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

const NEAR_ZERO_RADIUS: f64 = 0.25;

/// Natural log of the gamma function for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "log_gamma requires a finite x > 0",
            value: x,
        });
    }
    // near the zeros at 1 and 2, ln Γ(x) = ∫ ψ from the zero keeps full relative accuracy
    for zero in [1.0, 2.0] {
        if (x - zero).abs() <= NEAR_ZERO_RADIUS {
            if x == zero {
                return Ok(0.0);
            }
            let tol = Tolerance::new(f64::MIN_POSITIVE, 1e-13, 50)?;
            return integrate(|t| digamma(t).unwrap_or(f64::NAN), zero, x, &tol);
        }
    }
    let mut shifted = x;
    let mut product = 1.0;
    while shifted < ASYMPTOTIC_THRESHOLD {
        product *= shifted;
        shifted += 1.0;
    }
    Ok(stirling_log_gamma(shifted) - product.ln())
}

fn stirling_log_gamma(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut power = inv;
    let mut series = 0.0;
    for (k, b) in BERNOULLI_EVEN.iter().enumerate().take(10) {
        let two_k = 2.0 * (k + 1) as f64;
        series += b / (two_k * (two_k - 1.0)) * power;
        power *= inv2;
    }
    (x - 0.5) * x.ln() - x + HALF_LN_2PI + series
}

/// Digamma ψ(x) = d/dx ln Γ(x).
pub fn digamma(x: f64) -> Result<f64> {
    polygamma(0, x)
}

/// Trigamma ψ'(x).
pub fn trigamma(x: f64) -> Result<f64> {
    polygamma(1, x)
}

/// The m-th derivative of the digamma function, ψ^(m)(x), for `m ≤ 6`.
///
/// Order 0 is digamma itself.
pub fn polygamma(order: usize, x: f64) -> Result<f64> {
    if order > MAX_POLYGAMMA_ORDER {
        return Err(Error::UnsupportedOrder {
            order,
            min: 0,
            max: MAX_POLYGAMMA_ORDER,
        });
    }
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "polygamma requires a finite x > 0",
            value: x,
        });
    }

    // ψ^(m)(x) = ψ^(m)(x + 1) - (-1)^m m! / x^(m+1)
    let exponent = order as i32 + 1;
    let mut shifted = x;
    let mut correction = 0.0;
    while shifted < ASYMPTOTIC_THRESHOLD {
        correction += shifted.powi(-exponent);
        shifted += 1.0;
    }
    let sign = if order.is_multiple_of(2) { 1.0 } else { -1.0 };
    let correction = sign * factorial(order) * correction;

    Ok(asymptotic_polygamma(order, shifted) - correction)
}

fn asymptotic_polygamma(order: usize, x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    if order == 0 {
        let mut series = 0.0;
        let mut power = inv2;
        for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
            let term = b / (2.0 * (k + 1) as f64) * power;
            series += term;
            if term.abs() < 1e-18 * x.ln().abs().max(1e-300) {
                break;
            }
            power *= inv2;
        }
        return x.ln() - 0.5 * inv - series;
    }

    let m = order;
    // (-1)^(m+1) [ (m-1)!/x^m + m!/(2 x^(m+1)) + Σ B_2k (2k+m-1)!/((2k)! x^(2k+m)) ]
    let lead = factorial(m - 1) * inv.powi(m as i32);
    let mut total = lead + 0.5 * factorial(m) * inv.powi(m as i32 + 1);
    // ratio (2k+m-1)!/(2k)! updated incrementally
    let mut ratio = factorial(m + 1) / 2.0;
    let mut power = inv.powi(m as i32 + 2);
    for (k0, b) in BERNOULLI_EVEN.iter().enumerate() {
        let k = k0 + 1;
        if k > 1 {
            let two_k = 2 * k;
            ratio *= ((two_k + m - 2) * (two_k + m - 1)) as f64 / ((two_k - 1) * two_k) as f64;
            power *= inv2;
        }
        let term = b * ratio * power;
        total += term;
        if term.abs() < 1e-18 * lead {
            break;
        }
    }
    if m % 2 == 1 {
        total
    } else {
        -total
    }
}
