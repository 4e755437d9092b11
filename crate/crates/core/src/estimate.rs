//! Empirical log-statistics, texture/speckle separation and method-of-log-cumulants
//! (MoLC) fitting.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mellin::{convert, log_cumulants, Convention, LogStats, StatKind, MAX_CONVERT_ORDER};
use crate::models::{ClutterModel, Family};
use crate::specfun::{digamma, polygamma, trigamma};

/// Positive, finite sample values.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    values: Vec<f64>,
}

impl SampleSet {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, v)| !(**v > 0.0 && v.is_finite()))
        {
            return Err(Error::InvalidSample { index, value });
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn count(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    fn merge(&mut self, other: &CompensatedSum) {
        self.add(other.sum);
        self.add(other.compensation);
    }

    fn total(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Running sums of (ln x)^k, k = 1..4. Partial sums from separate chunks can be
/// merged in any order.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct LogPowerSums {
    count: usize,
    sums: [CompensatedSum; 4],
}

impl LogPowerSums {
    pub fn from_slice(values: &[f64]) -> Self {
        let mut acc = Self::default();
        for &x in values {
            acc.push(x);
        }
        acc
    }

    pub fn push(&mut self, x: f64) {
        let l = x.ln();
        let mut power = 1.0;
        for sum in self.sums.iter_mut() {
            power *= l;
            sum.add(power);
        }
        self.count += 1;
    }

    pub fn merge(&mut self, other: &LogPowerSums) {
        self.count += other.count;
        for (a, b) in self.sums.iter_mut().zip(other.sums.iter()) {
            a.merge(b);
        }
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Sample log-moments m̃₁..m̃_max_n.
    pub fn log_moments(&self, max_n: usize) -> Result<LogStats> {
        check_empirical_order(max_n)?;
        if self.count == 0 {
            return Err(Error::EmptySample);
        }
        let n = self.count as f64;
        let values = self.sums[..max_n].iter().map(|s| s.total() / n).collect();
        LogStats::moments(values)
    }
}

fn check_empirical_order(max_n: usize) -> Result<()> {
    if (1..=MAX_CONVERT_ORDER).contains(&max_n) {
        Ok(())
    } else {
        Err(Error::UnsupportedOrder {
            order: max_n,
            min: 1,
            max: MAX_CONVERT_ORDER,
        })
    }
}

/// m̃_n = (1/N) Σ (ln x_i)^n for n = 1..max_n.
pub fn empirical_log_moments(samples: &SampleSet, max_n: usize) -> Result<LogStats> {
    check_empirical_order(max_n)?;
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    LogPowerSums::from_slice(samples.values()).log_moments(max_n)
}

/// Sample log-cumulants under the standard moment–cumulant relations.
pub fn empirical_log_cumulants(samples: &SampleSet, max_n: usize) -> Result<LogStats> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    if samples.count() < 2 {
        return Err(Error::Invalid(
            "log-cumulants need at least 2 samples".into(),
        ));
    }
    let moments = empirical_log_moments(samples, max_n)?;
    convert(&moments, StatKind::LogCumulants, Convention::Standard)
}

/// Batch-means standard error of a sample statistic.
///
/// The samples are split into `batches` contiguous blocks; the returned values
/// are sd(block statistics) / √batches, order by order.
pub fn batch_standard_errors<F>(
    samples: &SampleSet,
    batches: usize,
    statistic: F,
) -> Result<Vec<f64>>
where
    F: Fn(&SampleSet) -> Result<LogStats>,
{
    if batches < 2 {
        return Err(Error::Invalid(
            "batch splitting needs at least 2 batches".into(),
        ));
    }
    let size = samples.count() / batches;
    if size < 2 {
        return Err(Error::Invalid(format!(
            "{} samples are too few for {batches} batches",
            samples.count()
        )));
    }
    let mut per_batch = Vec::with_capacity(batches);
    for chunk in samples.values().chunks_exact(size).take(batches) {
        per_batch.push(statistic(&SampleSet::new(chunk.to_vec())?)?.values);
    }
    let orders = per_batch[0].len();
    let b = batches as f64;
    Ok((0..orders)
        .map(|k| {
            let mean = per_batch.iter().map(|v| v[k]).sum::<f64>() / b;
            let var = per_batch.iter().map(|v| (v[k] - mean).powi(2)).sum::<f64>() / (b - 1.0);
            (var / b).sqrt()
        })
        .collect())
}

/// Texture log-cumulants by subtracting the speckle's closed-form log-cumulants
/// from those of the data (log-cumulants of independent factors add).
pub fn texture_log_cumulants(
    data_cumulants: &LogStats,
    speckle: &ClutterModel,
    max_n: usize,
) -> Result<LogStats> {
    if data_cumulants.kind != StatKind::LogCumulants
        || data_cumulants.convention != Convention::Standard
    {
        return Err(Error::Invalid(
            "texture separation needs standard-convention log-cumulants".into(),
        ));
    }
    if max_n == 0 || max_n > data_cumulants.len() {
        return Err(Error::UnsupportedOrder {
            order: max_n,
            min: 1,
            max: data_cumulants.len(),
        });
    }
    let speckle_cumulants = log_cumulants(speckle, max_n)?;
    let values = data_cumulants.values[..max_n]
        .iter()
        .zip(&speckle_cumulants.values)
        .map(|(d, s)| d - s)
        .collect();
    LogStats::cumulants(values)
}

const TRIGAMMA_BRACKET: (f64, f64) = (1e-8, 1e8);
const TRIGAMMA_MAX_ITERATIONS: usize = 200;

/// Solve ψ'(x) = y for x > 0.
///
/// Newton iteration from x₀ = 1/y + 1/2, falling back to bisection whenever a
/// step leaves the current bracket (initially [1e-8, 1e8]).
pub fn invert_trigamma(y: f64) -> Result<f64> {
    invert_trigamma_counted(y).map(|(x, _)| x)
}

fn invert_trigamma_counted(y: f64) -> Result<(f64, usize)> {
    let (mut lo, mut hi) = TRIGAMMA_BRACKET;
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain {
            what: "invert_trigamma requires y > 0",
            value: y,
        });
    }
    if y >= trigamma(lo)? || y <= trigamma(hi)? {
        return Err(Error::Domain {
            what: "invert_trigamma: solution outside [1e-8, 1e8]",
            value: y,
        });
    }
    let mut x = (1.0 / y + 0.5).clamp(lo, hi);
    for iteration in 1..=TRIGAMMA_MAX_ITERATIONS {
        let residual = trigamma(x)? - y;
        if residual.abs() <= 1e-14 * y {
            return Ok((x, iteration));
        }
        // ψ' is decreasing
        if residual > 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let newton = x - residual / polygamma(2, x)?;
        let next = if newton > lo && newton < hi {
            newton
        } else if hi / lo > 4.0 {
            (lo * hi).sqrt()
        } else {
            0.5 * (lo + hi)
        };
        if (next - x).abs() <= 4.0 * f64::EPSILON * x {
            let residual = trigamma(next)? - y;
            if residual.abs() <= 1e-10 * y {
                return Ok((next, iteration));
            }
        }
        x = next;
    }
    Err(Error::NonConvergence {
        what: "invert_trigamma",
        iterations: TRIGAMMA_MAX_ITERATIONS,
    })
}

/// ψ'^{-1}(y), returning +∞ when y is too small for the bracket (x > 1e8).
fn invert_trigamma_or_infinite(y: f64) -> Result<(f64, usize)> {
    if y > 0.0 && y <= trigamma(TRIGAMMA_BRACKET.1)? {
        return Ok((f64::INFINITY, 0));
    }
    invert_trigamma_counted(y)
}

/// ψ^(m)(x) with the x → ∞ limit of 0 for m ≥ 1.
fn polygamma_or_limit(order: usize, x: f64) -> Result<f64> {
    if x.is_infinite() {
        Ok(0.0)
    } else {
        polygamma(order, x)
    }
}

/// Settings for [`fit_molc_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FitOptions {
    /// Largest accepted |closed-form − input| over the fitted orders.
    pub tolerance: f64,
    pub max_iterations: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            max_iterations: 200,
        }
    }
}

/// Result of a MoLC fit.
///
/// Serializes as a flat JSON record: family, parameters, iterations, residual, converged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    #[serde(flatten)]
    pub model: ClutterModel,
    pub iterations: usize,
    pub residual: f64,
    pub converged: bool,
}

const PARAMETER_BOX: (f64, f64) = (1e-6, 1e6);

/// Orders of log-cumulants that determine each family's parameters.
pub fn fit_orders(family: Family) -> usize {
    match family {
        Family::Exponential | Family::Maxwell | Family::Rayleigh => 1,
        Family::Gamma | Family::Nakagami | Family::Weibull | Family::KAmplitude => 2,
        Family::InverseGamma => 2,
        Family::GammaGamma | Family::Fisher | Family::WeibullNakagami => 3,
    }
}

/// Method-of-log-cumulants fit with default options.
pub fn fit_molc(family: Family, cumulants: &LogStats) -> Result<FitReport> {
    fit_molc_with(family, cumulants, &FitOptions::default())
}

/// Method-of-log-cumulants fit: equate the family's closed-form log-cumulants
/// to `cumulants` at the lowest orders that pin down its parameters.
///
/// Scale degeneracies are resolved by fixing `mu = 1` for the K amplitude and
/// `b = 1` for Weibull–Nakagami. Gamma–gamma output is canonical with `L ≤ M`.
pub fn fit_molc_with(
    family: Family,
    cumulants: &LogStats,
    options: &FitOptions,
) -> Result<FitReport> {
    if cumulants.kind != StatKind::LogCumulants || cumulants.convention != Convention::Standard {
        return Err(Error::Invalid(
            "MoLC fitting needs standard-convention log-cumulants".into(),
        ));
    }
    let needed = fit_orders(family);
    if cumulants.len() < needed {
        return Err(Error::Invalid(format!(
            "{family} fitting needs {needed} log-cumulants, got {}",
            cumulants.len()
        )));
    }
    let k = &cumulants.values;
    let k1 = k[0];
    let require_positive_k2 = || {
        if k[1] > 0.0 {
            Ok(k[1])
        } else {
            Err(Error::InfeasibleCumulants(format!(
                "k2 = {} must be > 0",
                k[1]
            )))
        }
    };

    let psi1 = digamma(1.0)?;
    let trigamma1 = trigamma(1.0)?;
    let (model, iterations, orders_used) = match family {
        Family::Exponential => (
            ClutterModel::Exponential {
                mean: (k1 - psi1).exp(),
            },
            0,
            1,
        ),
        Family::Rayleigh => (
            ClutterModel::Rayleigh {
                scale: (k1 - 0.5 * psi1).exp(),
            },
            0,
            1,
        ),
        Family::Maxwell => (
            ClutterModel::Maxwell {
                scale: (k1 - 0.5 * digamma(1.5)?).exp() / 2f64.sqrt(),
            },
            0,
            1,
        ),
        Family::Gamma => {
            let k2 = require_positive_k2()?;
            let (shape, it) = invert_trigamma_counted(k2)?;
            let mean = shape * (k1 - digamma(shape)?).exp();
            (ClutterModel::Gamma { shape, mean }, it, 2)
        }
        Family::Nakagami => {
            let k2 = require_positive_k2()?;
            let (shape, it) = invert_trigamma_counted(4.0 * k2)?;
            let scale = shape.sqrt() * (k1 - 0.5 * digamma(shape)?).exp();
            (ClutterModel::Nakagami { shape, scale }, it, 2)
        }
        Family::Weibull => {
            let k2 = require_positive_k2()?;
            let shape = (trigamma1 / k2).sqrt();
            let scale = (k1 - psi1 / shape).exp();
            (ClutterModel::Weibull { shape, scale }, 0, 2)
        }
        Family::InverseGamma => {
            let k2 = require_positive_k2()?;
            let (shape, it) = invert_trigamma_counted(k2)?;
            let scale = (k1 + digamma(shape)?).exp() / shape;
            (ClutterModel::InverseGamma { shape, scale }, it, 2)
        }
        Family::KAmplitude => {
            let k2 = require_positive_k2()?;
            let texture_part = 4.0 * k2 - trigamma1;
            if texture_part <= 0.0 {
                return Err(Error::InfeasibleCumulants(format!(
                    "k2 = {k2} does not exceed the Rayleigh speckle share ψ'(1)/4"
                )));
            }
            let (alpha, it) = invert_trigamma_counted(texture_part)?;
            let rate = (psi1 + digamma(alpha)? - 2.0 * k1).exp();
            (
                ClutterModel::KAmplitude {
                    texture_shape: alpha,
                    texture_rate: rate,
                    scale: 1.0,
                },
                it,
                2,
            )
        }
        Family::GammaGamma => {
            let k2 = require_positive_k2()?;
            let (l, m, it) = solve_gamma_gamma(k2, k[2], options)?;
            let mean = l * m * (k1 - digamma(l)? - digamma(m)?).exp();
            (
                ClutterModel::GammaGamma {
                    speckle_shape: l,
                    texture_shape: m,
                    mean,
                },
                it,
                3,
            )
        }
        Family::Fisher => {
            let k2 = require_positive_k2()?;
            let (l, m, it) = solve_fisher(k2, k[2], options)?;
            let mean = (l / m) * (k1 - digamma(l)? + digamma(m)?).exp();
            (
                ClutterModel::Fisher {
                    speckle_shape: l,
                    texture_shape: m,
                    mean,
                },
                it,
                3,
            )
        }
        Family::WeibullNakagami => {
            let k2 = require_positive_k2()?;
            let (c, alpha, it) = solve_weibull_nakagami(k2, k[2], k.get(3).copied(), options)?;
            let sigma = (2.0 * (k1 - psi1 / c - 0.5 * digamma(alpha)?)).exp();
            let used = if k.len() >= 4 { 4 } else { 3 };
            (
                ClutterModel::WeibullNakagami {
                    weibull_shape: c,
                    texture_shape: alpha,
                    texture_rate: 1.0,
                    mean_square: sigma,
                },
                it,
                used,
            )
        }
    };

    let model = model.validate().map_err(|e| {
        Error::InfeasibleCumulants(format!("fitted parameters are not admissible: {e}"))
    })?;
    let fitted = log_cumulants(&model, orders_used)?;
    let residual = fitted
        .values
        .iter()
        .zip(k)
        .take(fit_orders(family))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(FitReport {
        model,
        iterations,
        residual,
        converged: residual <= options.tolerance,
    })
}

/// Bracketed root refinement (Illinois variant of regula falsi).
fn refine_root<G>(
    g: G,
    mut a: f64,
    mut ga: f64,
    mut b: f64,
    mut gb: f64,
    max_iterations: usize,
) -> Result<(f64, usize)>
where
    G: Fn(f64) -> Result<f64>,
{
    let mut side = 0i8;
    for iteration in 1..=max_iterations {
        let mut x = (a * gb - b * ga) / (gb - ga);
        if !(x > a.min(b) && x < a.max(b)) {
            x = 0.5 * (a + b);
        }
        let gx = g(x)?;
        if gx == 0.0 || (b - a).abs() <= 4.0 * f64::EPSILON * x.abs() {
            return Ok((x, iteration));
        }
        if gx.signum() == gb.signum() {
            b = x;
            gb = gx;
            if side == -1 {
                ga *= 0.5;
            }
            side = -1;
        } else {
            a = x;
            ga = gx;
            if side == 1 {
                gb *= 0.5;
            }
            side = 1;
        }
        if (b - a).abs() <= 4.0 * f64::EPSILON * x.abs() {
            return Ok((x, iteration));
        }
    }
    Err(Error::NonConvergence {
        what: "MoLC root refinement",
        iterations: max_iterations,
    })
}

/// Sign changes of `g` on a log-spaced grid over (lo, hi), each refined to a root.
fn roots_on_log_grid<G>(
    g: &G,
    lo: f64,
    hi: f64,
    points: usize,
    max_iterations: usize,
) -> Result<(Vec<f64>, usize)>
where
    G: Fn(f64) -> Result<f64>,
{
    let ratio = (hi / lo).ln() / (points - 1) as f64;
    let grid: Vec<f64> = (0..points).map(|i| lo * (ratio * i as f64).exp()).collect();
    let mut values = Vec::with_capacity(points);
    for &x in &grid {
        values.push(g(x)?);
    }
    let mut roots = Vec::new();
    let mut iterations = 0;
    for i in 0..points - 1 {
        let (ga, gb) = (values[i], values[i + 1]);
        if ga == 0.0 {
            roots.push(grid[i]);
        } else if ga.signum() != gb.signum() && gb != 0.0 {
            let (root, it) = refine_root(g, grid[i], ga, grid[i + 1], gb, max_iterations)?;
            iterations += it;
            roots.push(root);
        }
    }
    if values[points - 1] == 0.0 {
        roots.push(grid[points - 1]);
    }
    Ok((roots, iterations))
}

fn in_box(x: f64) -> bool {
    x >= PARAMETER_BOX.0 && x <= PARAMETER_BOX.1
}

/// (L, M) with ψ'(L) + ψ'(M) = k2 and ψ''(L) + ψ''(M) = k3, L ≤ M.
///
/// On the k2 constraint M is a function of L, and along the branch L ≤ M the k3
/// residual is increasing in L, so one bracketed root search suffices.
fn solve_gamma_gamma(k2: f64, k3: f64, options: &FitOptions) -> Result<(f64, f64, usize)> {
    let (l_low, it_low) = invert_trigamma_counted(k2)?;
    let (l_sym, it_sym) = invert_trigamma_counted(0.5 * k2)?;
    let texture_shape = |l: f64| -> Result<f64> {
        let share = k2 - trigamma(l)?;
        if share <= 0.0 {
            return Ok(f64::INFINITY);
        }
        Ok(invert_trigamma_or_infinite(share)?.0)
    };
    let residual = |l: f64| -> Result<f64> {
        let m = texture_shape(l)?;
        Ok(polygamma(2, l)? + polygamma_or_limit(2, m)? - k3)
    };
    let at_low = polygamma(2, l_low)? - k3;
    let at_sym = 2.0 * polygamma(2, l_sym)? - k3;
    let mut iterations = it_low + it_sym;
    // L = M puts the root on the end of the bracket, where round-off in the
    // inverse trigamma can flip the sign of the residual
    if at_sym.abs() <= 1e-9 * k3.abs().max(1.0) {
        return Ok((l_sym, l_sym, iterations));
    }
    if at_low.signum() == at_sym.signum() {
        return Err(Error::InfeasibleCumulants(format!(
            "no gamma-gamma shapes match k2 = {k2}, k3 = {k3}"
        )));
    }
    let (l, it) = refine_root(
        residual,
        l_low,
        at_low,
        l_sym,
        at_sym,
        options.max_iterations,
    )?;
    iterations += it;
    let m = texture_shape(l)?;
    if !in_box(l) || !in_box(m) {
        return Err(Error::InfeasibleCumulants(format!(
            "gamma-gamma shapes (L = {l}, M = {m}) leave the box [1e-6, 1e6]"
        )));
    }
    Ok((l, m, iterations))
}

/// (L, M) with ψ'(L) + ψ'(M) = k2 and ψ''(L) − ψ''(M) = k3.
fn solve_fisher(k2: f64, k3: f64, options: &FitOptions) -> Result<(f64, f64, usize)> {
    let (l_low, it_low) = invert_trigamma_counted(k2)?;
    let texture_shape = |l: f64| -> Result<f64> {
        let share = k2 - trigamma(l)?;
        if share <= 0.0 {
            return Ok(f64::INFINITY);
        }
        Ok(invert_trigamma_or_infinite(share)?.0)
    };
    let residual = |l: f64| -> Result<f64> {
        let m = texture_shape(l)?;
        Ok(polygamma(2, l)? - polygamma_or_limit(2, m)? - k3)
    };
    let at_low = polygamma(2, l_low)? - k3;
    let l_high = PARAMETER_BOX.1;
    let at_high = residual(l_high)?;
    if at_low.signum() == at_high.signum() {
        return Err(Error::InfeasibleCumulants(format!(
            "no Fisher shapes match k2 = {k2}, k3 = {k3}"
        )));
    }
    let (l, it) = refine_root(
        residual,
        l_low,
        at_low,
        l_high,
        at_high,
        options.max_iterations,
    )?;
    let m = texture_shape(l)?;
    if !in_box(l) || !in_box(m) {
        return Err(Error::InfeasibleCumulants(format!(
            "Fisher shapes (L = {l}, M = {m}) leave the box [1e-6, 1e6]"
        )));
    }
    Ok((l, m, it_low + it))
}

/// (c, α) with ψ'(1)/c² + ψ'(α)/4 = k2 and ψ''(1)/c³ + ψ''(α)/8 = k3.
///
/// These two equations typically admit two solutions; when k4 is supplied the
/// one reproducing it best is returned, otherwise the one with larger α.
fn solve_weibull_nakagami(
    k2: f64,
    k3: f64,
    k4: Option<f64>,
    options: &FitOptions,
) -> Result<(f64, f64, usize)> {
    let trigamma1 = trigamma(1.0)?;
    let tetragamma1 = polygamma(2, 1.0)?;
    let pentagamma1 = polygamma(3, 1.0)?;
    let (alpha_low, it_low) = invert_trigamma_counted(4.0 * k2)?;
    let weibull_shape = |alpha: f64| -> Result<f64> {
        let share = k2 - 0.25 * trigamma(alpha)?;
        Ok((trigamma1 / share).sqrt())
    };
    let residual = |alpha: f64| -> Result<f64> {
        let c = weibull_shape(alpha)?;
        Ok(tetragamma1 / c.powi(3) + polygamma(2, alpha)? / 8.0 - k3)
    };
    let lo = alpha_low * (1.0 + 1e-9);
    let (roots, it) =
        roots_on_log_grid(&residual, lo, PARAMETER_BOX.1, 600, options.max_iterations)?;
    let mut candidates = Vec::new();
    for alpha in roots {
        let c = weibull_shape(alpha)?;
        if in_box(alpha) && in_box(c) {
            candidates.push((c, alpha));
        }
    }
    if candidates.is_empty() {
        return Err(Error::InfeasibleCumulants(format!(
            "no Weibull–Nakagami shapes match k2 = {k2}, k3 = {k3}"
        )));
    }
    let chosen = match k4 {
        Some(k4) => {
            let mut best = candidates[0];
            let mut best_err = f64::INFINITY;
            for &(c, alpha) in &candidates {
                let predicted = pentagamma1 / c.powi(4) + polygamma(3, alpha)? / 16.0;
                let err = (predicted - k4).abs();
                if err < best_err {
                    best_err = err;
                    best = (c, alpha);
                }
            }
            best
        }
        None => *candidates
            .iter()
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty"),
    };
    Ok((chosen.0, chosen.1, it_low + it))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::E;

    #[test]
    fn sample_set_validation() {
        assert!(SampleSet::new(vec![1.0, 2.0]).is_ok());
        assert_eq!(
            SampleSet::new(vec![1.0, 0.0]).unwrap_err(),
            Error::InvalidSample {
                index: 1,
                value: 0.0
            }
        );
        assert!(SampleSet::new(vec![f64::INFINITY]).is_err());
        assert!(SampleSet::new(vec![-1.0]).is_err());
    }

    #[test]
    fn empirical_moment_examples() {
        let ones = SampleSet::new(vec![1.0; 3]).unwrap();
        assert_eq!(
            empirical_log_moments(&ones, 4).unwrap().values,
            vec![0.0; 4]
        );

        let s = SampleSet::new(vec![E, E * E]).unwrap();
        let m = empirical_log_moments(&s, 2).unwrap();
        assert!((m.values[0] - 1.5).abs() < 1e-15);
        assert!((m.values[1] - 2.5).abs() < 1e-15);

        let empty = SampleSet::new(vec![]).unwrap();
        assert_eq!(empirical_log_moments(&empty, 2), Err(Error::EmptySample));
        assert_eq!(empirical_log_cumulants(&empty, 2), Err(Error::EmptySample));
        assert!(empirical_log_moments(&s, 5).is_err());
    }

    #[test]
    fn degenerate_sample_cumulants() {
        for &c in &[0.3, 1.0, 7.5] {
            let s = SampleSet::new(vec![c; 3]).unwrap();
            let k = empirical_log_cumulants(&s, 4).unwrap();
            assert!((k.values[0] - f64::ln(c)).abs() < 1e-15);
            for v in &k.values[1..] {
                assert!(v.abs() < 1e-14, "{v}");
            }
        }
    }

    #[test]
    fn merge_order_does_not_matter() {
        let values: Vec<f64> = (1..20_000)
            .map(|i| 1.0 + (i as f64 * 0.37).sin().abs() * 40.0)
            .collect();
        let whole = LogPowerSums::from_slice(&values);
        let mut forward = LogPowerSums::default();
        for chunk in values.chunks(777) {
            forward.merge(&LogPowerSums::from_slice(chunk));
        }
        let mut backward = LogPowerSums::default();
        for chunk in values.chunks(777).rev() {
            backward.merge(&LogPowerSums::from_slice(chunk));
        }
        let a = whole.log_moments(4).unwrap().values;
        let b = forward.log_moments(4).unwrap().values;
        let c = backward.log_moments(4).unwrap().values;
        for i in 0..4 {
            assert!((a[i] - b[i]).abs() <= 1e-13 * a[i].abs());
            assert!((a[i] - c[i]).abs() <= 1e-13 * a[i].abs());
        }
    }

    #[test]
    fn invert_trigamma_examples() {
        let x = invert_trigamma(1.644_934_1).unwrap();
        assert!((x - 1.0).abs() < 1e-7);
        let y = std::f64::consts::PI.powi(2) / 6.0;
        assert!((invert_trigamma(y).unwrap() - 1.0).abs() < 1e-12);
        let x = invert_trigamma(0.1).unwrap();
        assert!((trigamma(x).unwrap() - 0.1).abs() <= 1e-10 * 0.1);
        assert!(invert_trigamma(0.0).is_err());
        assert!(invert_trigamma(-1.0).is_err());
    }

    #[test]
    fn infeasible_weibull() {
        let k = LogStats::cumulants(vec![0.1, -0.2]).unwrap();
        assert!(matches!(
            fit_molc(Family::Weibull, &k),
            Err(Error::InfeasibleCumulants(_))
        ));
        let k = LogStats::cumulants(vec![0.1, 0.0]).unwrap();
        assert!(matches!(
            fit_molc(Family::Gamma, &k),
            Err(Error::InfeasibleCumulants(_))
        ));
    }

    #[test]
    fn fit_rejects_wrong_inputs() {
        let m = LogStats::moments(vec![0.1, 0.5]).unwrap();
        assert!(fit_molc(Family::Gamma, &m).is_err());
        let short = LogStats::cumulants(vec![0.1, 0.5]).unwrap();
        assert!(fit_molc(Family::GammaGamma, &short).is_err());
    }

    #[test]
    fn gamma_gamma_example() {
        let k2 = trigamma(1.0).unwrap() + trigamma(2.0).unwrap();
        let k3 = polygamma(2, 1.0).unwrap() + polygamma(2, 2.0).unwrap();
        assert!((k2 - 2.289_868_1).abs() < 1e-7);
        assert!((k3 + 2.808_227_6).abs() < 1e-7);
        let k = LogStats::cumulants(vec![0.0, k2, k3]).unwrap();
        let report = fit_molc(Family::GammaGamma, &k).unwrap();
        match report.model {
            ClutterModel::GammaGamma {
                speckle_shape,
                texture_shape,
                ..
            } => {
                assert!((speckle_shape - 1.0).abs() < 1e-8);
                assert!((texture_shape - 2.0).abs() < 1e-8);
            }
            other => panic!("{other:?}"),
        }
        assert!(report.converged);
    }

    #[test]
    fn fit_report_json_is_flat() {
        let k = log_cumulants(
            &ClutterModel::Gamma {
                shape: 3.0,
                mean: 2.0,
            },
            2,
        )
        .unwrap();
        let report = fit_molc(Family::Gamma, &k).unwrap();
        let json: serde_json::Value = serde_json::to_value(&report).unwrap();
        assert_eq!(json["family"], "gamma");
        assert!((json["L"].as_f64().unwrap() - 3.0).abs() < 1e-8);
        assert!((json["mu"].as_f64().unwrap() - 2.0).abs() < 1e-8);
        assert!(json["iterations"].is_u64());
        assert!(json["residual"].is_f64());
        assert_eq!(json["converged"], true);
    }
}
