//! Modified Bessel function of the second kind, K_ν(x), for real order.
//!
//! The order is reduced to μ = ν - round(ν) ∈ [-1/2, 1/2]. K_μ and K_{μ+1}
//! come from Temme's series for x ≤ 2 and from Steed's continued fraction
//! (CF2) for x > 2, both exponentially scaled. Forward recurrence in the order
//! then reaches ν; it is carried out on ratios so that large orders at small
//! arguments stay representable as a logarithm.

use std::f64::consts::PI;

use crate::error::{Error, Result};

use super::gamma::log_gamma;

/// Taylor coefficients of 1/Γ(1+z) = Σ_j c_j z^j around z = 0.
const RECIP_GAMMA_1P: [f64; 26] = [
    1.0,
    0.577_215_664_901_532_9,
    -0.655_878_071_520_253_8,
    -0.042_002_635_034_095_2,
    0.166_538_611_382_291_5,
    -0.042_197_734_555_544_3,
    -0.009_621_971_527_877_0,
    0.007_218_943_246_663_0,
    -0.001_165_167_591_859_1,
    -0.000_215_241_674_114_9,
    0.000_128_050_282_388_2,
    -0.000_020_134_854_780_7,
    -0.000_001_250_493_482_1,
    0.000_001_133_027_232_0,
    -0.000_000_205_633_841_7,
    0.000_000_006_116_095_0,
    0.000_000_005_002_007_5,
    -0.000_000_001_181_274_6,
    0.000_000_000_104_342_7,
    0.000_000_000_007_782_3,
    -0.000_000_000_003_696_8,
    0.000_000_000_000_510_0,
    -0.000_000_000_000_020_6,
    -0.000_000_000_000_005_4,
    0.000_000_000_000_001_4,
    0.000_000_000_000_000_1,
];

const MAX_ITERATIONS: usize = 10_000;

/// Temme's auxiliary functions for |μ| ≤ 1/2:
/// g1 = (1/Γ(1-μ) - 1/Γ(1+μ)) / (2μ), g2 = (1/Γ(1-μ) + 1/Γ(1+μ)) / 2,
/// plus 1/Γ(1+μ) and 1/Γ(1-μ).
fn temme_gamma(mu: f64) -> (f64, f64, f64, f64) {
    let mut g1 = 0.0;
    let mut g2 = 0.0;
    let mut power = 1.0;
    for (j, c) in RECIP_GAMMA_1P.iter().enumerate() {
        if j % 2 == 0 {
            g2 += c * power;
        } else {
            // odd powers: contributes -c μ^(j-1) to g1
            g1 -= c * power;
        }
        if j % 2 == 1 {
            power *= mu * mu;
        }
    }
    let recip_gamma_1p = g2 - mu * g1;
    let recip_gamma_1m = g2 + mu * g1;
    (g1, g2, recip_gamma_1p, recip_gamma_1m)
}

/// Scaled e^x K_μ(x), e^x K_{μ+1}(x) by Temme's series. Requires |μ| ≤ 1/2, 0 < x ≤ 2.
fn temme_series_scaled(mu: f64, x: f64) -> Result<(f64, f64)> {
    let half_x = 0.5 * x;
    let ln_half_x = half_x.ln();
    let half_x_mu = (mu * ln_half_x).exp();
    let pi_mu = PI * mu;
    let sigma = -mu * ln_half_x;
    let sin_ratio = if pi_mu.abs() < f64::EPSILON {
        1.0
    } else {
        pi_mu / pi_mu.sin()
    };
    let sinh_ratio = if sigma.abs() < f64::EPSILON {
        1.0
    } else {
        sigma.sinh() / sigma
    };

    let (g1, g2, recip_gamma_1p, recip_gamma_1m) = temme_gamma(mu);

    let mut fk = sin_ratio * (sigma.cosh() * g1 - sinh_ratio * ln_half_x * g2);
    let mut pk = 0.5 / half_x_mu / recip_gamma_1p;
    let mut qk = 0.5 * half_x_mu / recip_gamma_1m;
    let mut ck = 1.0;
    let mut sum0 = fk;
    let mut sum1 = pk;
    let mut k = 0usize;
    loop {
        k += 1;
        if k > MAX_ITERATIONS {
            return Err(Error::NonConvergence {
                what: "Bessel K series",
                iterations: MAX_ITERATIONS,
            });
        }
        let kf = k as f64;
        fk = (kf * fk + pk + qk) / (kf * kf - mu * mu);
        ck *= half_x * half_x / kf;
        pk /= kf - mu;
        qk /= kf + mu;
        let hk = -kf * fk + pk;
        let del0 = ck * fk;
        let del1 = ck * hk;
        sum0 += del0;
        sum1 += del1;
        if del0.abs() < 0.5 * sum0.abs() * f64::EPSILON
            && del1.abs() < 0.5 * sum1.abs() * f64::EPSILON
        {
            break;
        }
    }
    let ex = x.exp();
    Ok((sum0 * ex, sum1 * 2.0 / x * ex))
}

/// Scaled e^x K_μ(x), e^x K_{μ+1}(x) by Steed's continued fraction. Requires x > 2.
fn steed_cf2_scaled(mu: f64, x: f64) -> Result<(f64, f64)> {
    let mut bi = 2.0 * (1.0 + x);
    let mut di = 1.0 / bi;
    let mut delhi = di;
    let mut hi = di;

    let mut qi = 0.0;
    let mut qip1 = 1.0;

    let mut ai = -(0.25 - mu * mu);
    let a1 = ai;
    let mut ci = -ai;
    let mut bqi = -ai;

    let mut s = 1.0 + bqi * delhi;
    let mut converged = false;
    for i in 2..=MAX_ITERATIONS {
        ai -= 2.0 * (i - 1) as f64;
        ci = -ai * ci / i as f64;
        let tmp = (qi - bi * qip1) / ai;
        qi = qip1;
        qip1 = tmp;
        bqi += ci * qip1;
        bi += 2.0;
        di = 1.0 / (bi + ai * di);
        delhi *= bi * di - 1.0;
        hi += delhi;
        let dels = bqi * delhi;
        s += dels;
        if (dels / s).abs() < f64::EPSILON {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NonConvergence {
            what: "Bessel K continued fraction",
            iterations: MAX_ITERATIONS,
        });
    }
    hi *= -a1;
    let k_mu = (PI / (2.0 * x)).sqrt() / s;
    let k_mu1 = k_mu * (mu + x + 0.5 - hi) / x;
    Ok((k_mu, k_mu1))
}

/// ln K_ν(x) for real ν and x > 0. Never overflows.
pub fn ln_bessel_k(nu: f64, x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::Domain {
            what: "bessel_k requires a finite x > 0",
            value: x,
        });
    }
    if !nu.is_finite() {
        return Err(Error::Domain {
            what: "bessel_k requires a finite order",
            value: nu,
        });
    }
    let nu = nu.abs();
    let steps = (nu + 0.5).floor();
    let mu = nu - steps;
    let steps = steps as usize;

    let (k_mu, k_mu1) = if x <= 2.0 {
        temme_series_scaled(mu, x)?
    } else {
        steed_cf2_scaled(mu, x)?
    };

    if steps == 0 {
        return Ok(k_mu.ln() - x);
    }
    // ratio r_n = K_{μ+n+1} / K_{μ+n}; K_{n+1} = (2(μ+n)/x) K_n + K_{n-1}
    let mut log_k = k_mu1.ln();
    let mut ratio = k_mu1 / k_mu;
    for n in 1..steps {
        ratio = 2.0 * (mu + n as f64) / x + 1.0 / ratio;
        log_k += ratio.ln();
    }
    Ok(log_k - x)
}

/// Modified Bessel function of the second kind K_ν(x).
///
/// Fails with [`Error::Overflow`] when the value is not representable.
pub fn bessel_k(nu: f64, x: f64) -> Result<f64> {
    let ln_k = ln_bessel_k(nu, x)?;
    let value = ln_k.exp();
    if !value.is_finite() {
        return Err(Error::Overflow("bessel_k"));
    }
    Ok(value)
}

/// Closed form for half-integer orders, K_{n+1/2}(x), used as a cross-check.
pub fn bessel_k_half_integer(n: usize, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            what: "bessel_k requires x > 0",
            value: x,
        });
    }
    // K_{n+1/2}(x) = sqrt(π/(2x)) e^{-x} Σ_k (n+k)! / (k! (n-k)!) (2x)^{-k}
    let mut sum = 0.0;
    for k in 0..=n {
        let ln_coeff = log_gamma((n + k + 1) as f64)?
            - log_gamma((k + 1) as f64)?
            - log_gamma((n - k + 1) as f64)?;
        sum += (ln_coeff - k as f64 * (2.0 * x).ln()).exp();
    }
    Ok((PI / (2.0 * x)).sqrt() * (-x).exp() * sum)
}
