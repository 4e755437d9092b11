//! Second-kind statistics: the Mellin transform Φ(s) = E[X^{s-1}] of a clutter
//! density, its logarithm Ψ(s), classical moments Φ(n+1), and log-moments /
//! log-cumulants (derivatives of Φ and Ψ at s = 1).
//!
//! Closed forms are exact derivatives of the closed-form Ψ. Each one has a
//! numerical twin ([`phi_numeric`], [`log_cumulants_numeric`]) that goes through
//! quadrature of the density or finite differences of Ψ instead.

use std::cell::Cell;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::ClutterModel;
use crate::specfun::{
    derivative_richardson, digamma, integrate_semi_infinite_scaled, log_gamma, polygamma,
    stencil_reach, Tolerance,
};

/// Open real interval (lower, upper) on which Φ(s) is finite. Always contains 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnalyticityStrip {
    pub lower: f64,
    pub upper: f64,
}

impl AnalyticityStrip {
    pub fn contains(&self, s: f64) -> bool {
        s > self.lower && s < self.upper
    }

    pub fn intersect(&self, other: &AnalyticityStrip) -> AnalyticityStrip {
        AnalyticityStrip {
            lower: self.lower.max(other.lower),
            upper: self.upper.min(other.upper),
        }
    }

    fn require(&self, s: f64) -> Result<()> {
        if self.contains(s) {
            Ok(())
        } else {
            Err(Error::OutsideStrip {
                s,
                lower: self.lower,
                upper: self.upper,
            })
        }
    }
}

impl fmt::Display for AnalyticityStrip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.lower, self.upper)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatKind {
    LogMoments,
    LogCumulants,
}

/// Which moment–cumulant relations connect log-moments and log-cumulants.
///
/// `Standard` is the classical relation. `PaperEq6` uses, at order 4,
/// k₄ = m₄ − 4m₁m₃ + 6m₁²m₂ − 3m₁⁴ (the fourth central moment), which is not a
/// cumulant; orders 1–3 agree between the two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    #[default]
    Standard,
    PaperEq6,
}

/// Log-moments or log-cumulants of orders 1..=n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogStats {
    pub kind: StatKind,
    pub convention: Convention,
    pub values: Vec<f64>,
}

impl LogStats {
    pub fn new(kind: StatKind, convention: Convention, values: Vec<f64>) -> Result<Self> {
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::Invalid(format!(
                "log statistic of order {} is not finite ({v})",
                i + 1
            )));
        }
        Ok(Self {
            kind,
            convention,
            values,
        })
    }

    pub fn cumulants(values: Vec<f64>) -> Result<Self> {
        Self::new(StatKind::LogCumulants, Convention::Standard, values)
    }

    pub fn moments(values: Vec<f64>) -> Result<Self> {
        Self::new(StatKind::LogMoments, Convention::Standard, values)
    }

    /// The statistic of order `n` (1-based).
    pub fn order(&self, n: usize) -> Option<f64> {
        n.checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

fn check_order(n: usize, max: usize) -> Result<()> {
    if (1..=max).contains(&n) {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder {
            order: n,
            min: 1,
            max,
        })
    }
}

/// Maximal open interval of real s free of gamma-function poles in Φ.
pub fn analyticity_strip(model: &ClutterModel) -> AnalyticityStrip {
    let (lower, upper) = match *model {
        ClutterModel::Exponential { .. } => (0.0, f64::INFINITY),
        ClutterModel::Gamma { shape, .. } => (1.0 - shape, f64::INFINITY),
        ClutterModel::Nakagami { shape, .. } => (1.0 - 2.0 * shape, f64::INFINITY),
        ClutterModel::Maxwell { .. } => (-2.0, f64::INFINITY),
        ClutterModel::Weibull { shape, .. } => (1.0 - shape, f64::INFINITY),
        ClutterModel::Rayleigh { .. } => (-1.0, f64::INFINITY),
        ClutterModel::GammaGamma {
            speckle_shape,
            texture_shape,
            ..
        } => (1.0 - speckle_shape.min(texture_shape), f64::INFINITY),
        ClutterModel::KAmplitude { texture_shape, .. } => {
            ((-1.0f64).max(1.0 - 2.0 * texture_shape), f64::INFINITY)
        }
        ClutterModel::WeibullNakagami {
            weibull_shape,
            texture_shape,
            ..
        } => (
            (1.0 - weibull_shape).max(1.0 - 2.0 * texture_shape),
            f64::INFINITY,
        ),
        ClutterModel::Fisher {
            speckle_shape,
            texture_shape,
            ..
        } => (1.0 - speckle_shape, texture_shape + 1.0),
        ClutterModel::InverseGamma { shape, .. } => (f64::NEG_INFINITY, shape + 1.0),
    };
    AnalyticityStrip { lower, upper }
}

/// ln Γ(a + δ) − ln Γ(a), exactly zero at δ = 0.
fn log_gamma_shift(a: f64, delta: f64) -> Result<f64> {
    if delta == 0.0 {
        return Ok(0.0);
    }
    let b = a + delta;
    if a.min(b) >= STIRLING_SHIFT_MIN && a.is_finite() && b.is_finite() {
        // Stirling's series differenced term by term, so no large ln Γ values cancel
        let leading = (a - 0.5) * (delta / a).ln_1p() + delta * b.ln() - delta;
        return Ok(leading + stirling_tail(b) - stirling_tail(a));
    }
    Ok(log_gamma(b)? - log_gamma(a)?)
}

const STIRLING_SHIFT_MIN: f64 = 15.0;

/// ln Γ(x) − [(x − ½) ln x − x + ½ ln 2π] for large x.
fn stirling_tail(x: f64) -> f64 {
    const COEFFS: [f64; 7] = [
        1.0 / 12.0,
        -1.0 / 360.0,
        1.0 / 1260.0,
        -1.0 / 1680.0,
        1.0 / 1188.0,
        -691.0 / 360360.0,
        1.0 / 156.0,
    ];
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    COEFFS.iter().rev().fold(0.0, |acc, c| acc * inv2 + c) * inv
}

/// Γ(a + δ) / Γ(a); a finite product when δ is a small integer.
fn gamma_ratio(a: f64, delta: f64) -> Result<f64> {
    if delta.fract() == 0.0 && delta.abs() <= 32.0 {
        let steps = delta.abs() as usize;
        let product: f64 = if delta >= 0.0 {
            (0..steps).map(|k| a + k as f64).product()
        } else {
            (1..=steps).map(|k| a - k as f64).product()
        };
        return Ok(if delta >= 0.0 { product } else { 1.0 / product });
    }
    Ok(log_gamma_shift(a, delta)?.exp())
}

/// A simple family's Φ(s) = base^{s−1} · Γ(a + δ)/Γ(a), as (base, a, δ).
fn simple_factor(model: &ClutterModel, t: f64) -> Option<(f64, f64, f64)> {
    let factor = match *model {
        ClutterModel::Exponential { mean } => (mean, 1.0, t),
        ClutterModel::Gamma { shape, mean } => (mean / shape, shape, t),
        ClutterModel::Nakagami { shape, scale } => (scale / shape.sqrt(), shape, 0.5 * t),
        ClutterModel::Maxwell { scale } => (2f64.sqrt() * scale, 1.5, 0.5 * t),
        ClutterModel::Weibull { shape, scale } => (scale, 1.0, t / shape),
        ClutterModel::Rayleigh { scale } => (scale, 1.0, 0.5 * t),
        ClutterModel::InverseGamma { shape, scale } => (shape * scale, shape, -t),
        _ => return None,
    };
    Some(factor)
}

/// Ψ(s) = ln Φ(s), summed from log-gamma terms. Compound models add the Ψ of
/// their speckle and texture factors.
pub fn psi(model: &ClutterModel, s: f64) -> Result<f64> {
    let model = model.validate()?;
    analyticity_strip(&model).require(s)?;
    let t = s - 1.0;
    match simple_factor(&model, t) {
        Some((base, a, delta)) => Ok(t * base.ln() + log_gamma_shift(a, delta)?),
        None => {
            let parts = model.decompose()?;
            Ok(psi(&parts.speckle, s)? + psi(&parts.texture, s)?)
        }
    }
}

fn phi_product(model: &ClutterModel, t: f64) -> Result<f64> {
    match simple_factor(model, t) {
        Some((base, a, delta)) => Ok(base.powf(t) * gamma_ratio(a, delta)?),
        None => {
            let parts = model.decompose()?;
            Ok(phi_product(&parts.speckle, t)? * phi_product(&parts.texture, t)?)
        }
    }
}

/// Second-kind characteristic function Φ(s) = ∫₀^∞ x^{s−1} f(x) dx, closed form.
pub fn phi(model: &ClutterModel, s: f64) -> Result<f64> {
    let model = model.validate()?;
    analyticity_strip(&model).require(s)?;
    let direct = phi_product(&model, s - 1.0)?;
    if direct.is_finite() && direct > 0.0 {
        return Ok(direct);
    }
    // the factors over- or underflowed separately; combine in log space
    let value = psi(&model, s)?.exp();
    if !value.is_finite() {
        return Err(Error::Overflow("phi"));
    }
    Ok(value)
}

/// Φ(s) by adaptive quadrature of x^{s−1} f(x) over (0, ∞).
pub fn phi_numeric(model: &ClutterModel, s: f64, tol: &Tolerance) -> Result<f64> {
    let model = model.validate()?;
    analyticity_strip(&model).require(s)?;
    let failure = Cell::new(None);
    let integrand = |x: f64| match model.pdf(x) {
        Ok(0.0) => 0.0,
        Ok(density) => ((s - 1.0) * x.ln()).exp() * density,
        Err(e) => {
            failure.set(Some(e));
            0.0
        }
    };
    let value = integrate_semi_infinite_scaled(integrand, model.typical_scale(), tol)?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(value)
}

/// Classical moment m_n = E[Xⁿ] = Φ(n + 1).
pub fn classical_moment(model: &ClutterModel, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::UnsupportedOrder {
            order: 0,
            min: 1,
            max: usize::MAX,
        });
    }
    let strip = analyticity_strip(&model.validate()?);
    let s = n as f64 + 1.0;
    if s >= strip.upper {
        return Err(Error::MomentDiverges {
            n,
            limit: strip.upper - 1.0,
        });
    }
    phi(model, s)
}

/// Largest order accepted by [`log_cumulants`].
pub const MAX_CLOSED_FORM_ORDER: usize = 6;

/// Log-cumulants k̃₁..k̃_max_n, the exact derivatives of Ψ at s = 1.
pub fn log_cumulants(model: &ClutterModel, max_n: usize) -> Result<LogStats> {
    check_order(max_n, MAX_CLOSED_FORM_ORDER)?;
    let model = model.validate()?;
    let mut values = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        values.push(log_cumulant(&model, n)?);
    }
    LogStats::cumulants(values)
}

fn log_cumulant(model: &ClutterModel, n: usize) -> Result<f64> {
    let pg = |x: f64| polygamma(n - 1, x);
    let half_n = 0.5f64.powi(n as i32);
    let value = if n == 1 {
        match *model {
            ClutterModel::Exponential { mean } => mean.ln() + digamma(1.0)?,
            ClutterModel::Gamma { shape, mean } => (mean / shape).ln() + digamma(shape)?,
            ClutterModel::Nakagami { shape, scale } => {
                (scale / shape.sqrt()).ln() + 0.5 * digamma(shape)?
            }
            ClutterModel::Maxwell { scale } => {
                0.5 * (2.0 * scale * scale).ln() + 0.5 * digamma(1.5)?
            }
            ClutterModel::Weibull { shape, scale } => scale.ln() + digamma(1.0)? / shape,
            ClutterModel::Rayleigh { scale } => scale.ln() + 0.5 * digamma(1.0)?,
            ClutterModel::GammaGamma {
                speckle_shape: l,
                texture_shape: m,
                mean,
            } => (mean / (l * m)).ln() + digamma(l)? + digamma(m)?,
            ClutterModel::KAmplitude {
                texture_shape: alpha,
                texture_rate: b,
                scale,
            } => -0.5 * b.ln() + scale.ln() + 0.5 * digamma(1.0)? + 0.5 * digamma(alpha)?,
            ClutterModel::WeibullNakagami {
                weibull_shape: c,
                texture_shape: alpha,
                texture_rate: b,
                mean_square: sigma,
            } => 0.5 * (sigma / b).ln() + digamma(1.0)? / c + 0.5 * digamma(alpha)?,
            ClutterModel::Fisher {
                speckle_shape: l,
                texture_shape: m,
                mean,
            } => (m * mean / l).ln() + digamma(l)? - digamma(m)?,
            ClutterModel::InverseGamma { shape, scale } => (shape * scale).ln() - digamma(shape)?,
        }
    } else {
        let alternating = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        match *model {
            ClutterModel::Exponential { .. } => pg(1.0)?,
            ClutterModel::Gamma { shape, .. } => pg(shape)?,
            ClutterModel::Nakagami { shape, .. } => half_n * pg(shape)?,
            ClutterModel::Maxwell { .. } => half_n * pg(1.5)?,
            ClutterModel::Weibull { shape, .. } => pg(1.0)? / shape.powi(n as i32),
            ClutterModel::Rayleigh { .. } => half_n * pg(1.0)?,
            ClutterModel::GammaGamma {
                speckle_shape: l,
                texture_shape: m,
                ..
            } => pg(l)? + pg(m)?,
            ClutterModel::KAmplitude {
                texture_shape: alpha,
                ..
            } => half_n * (pg(1.0)? + pg(alpha)?),
            ClutterModel::WeibullNakagami {
                weibull_shape: c,
                texture_shape: alpha,
                ..
            } => pg(1.0)? / c.powi(n as i32) + half_n * pg(alpha)?,
            ClutterModel::Fisher {
                speckle_shape: l,
                texture_shape: m,
                ..
            } => pg(l)? + alternating * pg(m)?,
            ClutterModel::InverseGamma { shape, .. } => alternating * pg(shape)?,
        }
    };
    Ok(value)
}

/// Largest order accepted by [`log_cumulants_numeric`].
pub const MAX_NUMERIC_ORDER: usize = 4;

/// Base finite-difference step used by [`log_cumulants_numeric`] for order `n`.
pub fn numeric_cumulant_step(n: usize) -> f64 {
    if n <= 2 {
        1e-3
    } else {
        1e-2
    }
}

/// Log-cumulants as central-difference derivatives of [`psi`] at s = 1
/// (Richardson-extrapolated over steps h and h/2).
///
/// When the stencil would leave the analyticity strip the step is shrunk once
/// to fit.
pub fn log_cumulants_numeric(model: &ClutterModel, max_n: usize) -> Result<LogStats> {
    check_order(max_n, MAX_NUMERIC_ORDER)?;
    let model = model.validate()?;
    let strip = analyticity_strip(&model);
    let room = (1.0 - strip.lower).min(strip.upper - 1.0);
    let mut values = Vec::with_capacity(max_n);
    for n in 1..=max_n {
        let reach = stencil_reach(n) as f64;
        let mut step = numeric_cumulant_step(n);
        if reach * step >= room {
            step = 0.5 * room / reach;
        }
        let failure = Cell::new(None);
        let f = |s: f64| match psi(&model, s) {
            Ok(v) => v,
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        };
        let value = derivative_richardson(f, 1.0, n, step)?;
        if let Some(e) = failure.take() {
            return Err(e);
        }
        values.push(value);
    }
    LogStats::cumulants(values)
}

/// Log-moments m̃₁..m̃_max_n, from the closed-form log-cumulants.
pub fn log_moments(model: &ClutterModel, max_n: usize) -> Result<LogStats> {
    check_order(max_n, MAX_CONVERT_ORDER)?;
    let cumulants = log_cumulants(model, max_n)?;
    convert(&cumulants, StatKind::LogMoments, Convention::Standard)
}

/// Largest order supported by [`convert`].
pub const MAX_CONVERT_ORDER: usize = 4;

/// Convert between log-moments and log-cumulants (orders 1–4).
///
/// The input is read with its own convention; the output carries `convention`.
pub fn convert(stats: &LogStats, target: StatKind, convention: Convention) -> Result<LogStats> {
    let n = stats.values.len();
    check_order(n, MAX_CONVERT_ORDER)?;
    if stats.kind == target && (stats.convention == convention || target == StatKind::LogMoments) {
        return LogStats::new(target, convention, stats.values.clone());
    }
    let moments = match stats.kind {
        StatKind::LogMoments => stats.values.clone(),
        StatKind::LogCumulants => cumulants_to_moments(&stats.values, stats.convention),
    };
    let values = match target {
        StatKind::LogMoments => moments,
        StatKind::LogCumulants => moments_to_cumulants(&moments, convention),
    };
    LogStats::new(target, convention, values)
}

fn moments_to_cumulants(m: &[f64], convention: Convention) -> Vec<f64> {
    let mut k = Vec::with_capacity(m.len());
    let m1 = m[0];
    k.push(m1);
    if let Some(&m2) = m.get(1) {
        k.push(m2 - m1 * m1);
    }
    if let Some(&m3) = m.get(2) {
        k.push(m3 - 3.0 * m1 * m[1] + 2.0 * m1.powi(3));
    }
    if let Some(&m4) = m.get(3) {
        let (m2, m3) = (m[1], m[2]);
        k.push(match convention {
            Convention::Standard => {
                m4 - 4.0 * m1 * m3 - 3.0 * m2 * m2 + 12.0 * m1 * m1 * m2 - 6.0 * m1.powi(4)
            }
            Convention::PaperEq6 => m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1.powi(4),
        });
    }
    k
}

fn cumulants_to_moments(k: &[f64], convention: Convention) -> Vec<f64> {
    let mut m = Vec::with_capacity(k.len());
    let k1 = k[0];
    m.push(k1);
    if let Some(&k2) = k.get(1) {
        m.push(k2 + k1 * k1);
    }
    if let Some(&k3) = k.get(2) {
        m.push(k3 + 3.0 * k1 * m[1] - 2.0 * k1.powi(3));
    }
    if let Some(&k4) = k.get(3) {
        let (m2, m3) = (m[1], m[2]);
        m.push(match convention {
            Convention::Standard => {
                k4 + 4.0 * k1 * m3 + 3.0 * m2 * m2 - 12.0 * k1 * k1 * m2 + 6.0 * k1.powi(4)
            }
            Convention::PaperEq6 => k4 + 4.0 * k1 * m3 - 6.0 * k1 * k1 * m2 + 3.0 * k1.powi(4),
        });
    }
    m
}
