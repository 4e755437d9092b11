//! Central finite differences of order 1 to 4.

use crate::error::{Error, Result};

/// Default step for [`derivative_at`]: `max(1e-5, 1e-5·|x0|)` for orders 1–2 and
/// `1e-3` for orders 3–4.
pub fn default_step(order: usize, x0: f64) -> f64 {
    if order <= 2 {
        (1e-5 * x0.abs()).max(1e-5)
    } else {
        1e-3
    }
}

/// Number of steps the stencil reaches to each side of `x0`.
pub fn stencil_reach(order: usize) -> usize {
    if order <= 2 {
        1
    } else {
        2
    }
}

/// Central-difference estimate of the `order`-th derivative of `f` at `x0`.
///
/// Truncation error is O(step²). Stencils: f(x±h) for order 1;
/// f(x), f(x±h) for order 2; f(x±h), f(x±2h) for order 3;
/// f(x), f(x±h), f(x±2h) for order 4.
pub fn derivative_at<F: Fn(f64) -> f64>(f: F, x0: f64, order: usize, step: f64) -> Result<f64> {
    let h = step;
    let value = match order {
        1 => (f(x0 + h) - f(x0 - h)) / (2.0 * h),
        2 => (f(x0 + h) - 2.0 * f(x0) + f(x0 - h)) / (h * h),
        3 => {
            (f(x0 + 2.0 * h) - 2.0 * f(x0 + h) + 2.0 * f(x0 - h) - f(x0 - 2.0 * h))
                / (2.0 * h * h * h)
        }
        4 => {
            (f(x0 + 2.0 * h) - 4.0 * f(x0 + h) + 6.0 * f(x0) - 4.0 * f(x0 - h) + f(x0 - 2.0 * h))
                / (h * h * h * h)
        }
        _ => {
            return Err(Error::UnsupportedOrder {
                order,
                min: 1,
                max: 4,
            })
        }
    };
    Ok(value)
}

/// Two-level Richardson extrapolation of [`derivative_at`]: (4·D(h/2) − D(h)) / 3.
///
/// Cancels the O(h²) term, leaving O(h⁴).
pub fn derivative_richardson<F: Fn(f64) -> f64>(
    f: F,
    x0: f64,
    order: usize,
    step: f64,
) -> Result<f64> {
    let coarse = derivative_at(&f, x0, order, step)?;
    let fine = derivative_at(&f, x0, order, 0.5 * step)?;
    Ok((4.0 * fine - coarse) / 3.0)
}
