//! Clutter distribution families: parameters, validation, densities, and the
//! split of compound models into speckle and texture factors.

use std::f64::consts::{LN_2, PI};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{integrate_semi_infinite_scaled, ln_bessel_k, log_gamma, Tolerance};

fn one() -> f64 {
    1.0
}

/// A parameterized amplitude or power distribution on (0, ∞).
///
/// Serialized as a flat record: `{"family": "gamma", "L": 2.0, "mu": 1.0}`.
/// Field names follow the usual clutter notation (L looks, M texture shape,
/// mu mean or scale, sigma, b, c, z, alpha).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum ClutterModel {
    /// Exponential power with mean `mu`. Same as `Gamma { shape: 1, mean }`.
    Exponential {
        #[serde(rename = "mu")]
        mean: f64,
    },
    /// Gamma-distributed speckle power with `L` looks and mean power `mu`.
    Gamma {
        #[serde(rename = "L")]
        shape: f64,
        #[serde(rename = "mu")]
        mean: f64,
    },
    /// Nakagami amplitude: square root of a gamma power with shape `L`, mean `mu²`.
    Nakagami {
        #[serde(rename = "L")]
        shape: f64,
        #[serde(rename = "mu")]
        scale: f64,
    },
    /// Maxwell amplitude with scale `sigma`.
    Maxwell {
        #[serde(rename = "sigma")]
        scale: f64,
    },
    /// Weibull amplitude with shape `b` and scale `z`.
    Weibull {
        #[serde(rename = "b")]
        shape: f64,
        #[serde(rename = "z")]
        scale: f64,
    },
    /// Rayleigh amplitude with scale `z` (mean square `z²`).
    Rayleigh {
        #[serde(rename = "z")]
        scale: f64,
    },
    /// Generalized gamma–gamma (GΓ) power: gamma speckle × gamma texture.
    GammaGamma {
        #[serde(rename = "L")]
        speckle_shape: f64,
        #[serde(rename = "M")]
        texture_shape: f64,
        #[serde(rename = "mu")]
        mean: f64,
    },
    /// K-distributed amplitude: Rayleigh speckle whose mean square is gamma
    /// with shape `alpha` and rate `b`, times the amplitude scale `mu`.
    KAmplitude {
        #[serde(rename = "alpha")]
        texture_shape: f64,
        #[serde(rename = "b")]
        texture_rate: f64,
        #[serde(rename = "mu", default = "one")]
        scale: f64,
    },
    /// Weibull speckle of shape `c` with a Nakagami-distributed scale
    /// (z² gamma with shape `alpha`, rate `b`), amplitude scaled by √sigma.
    WeibullNakagami {
        #[serde(rename = "c")]
        weibull_shape: f64,
        #[serde(rename = "alpha")]
        texture_shape: f64,
        #[serde(rename = "b")]
        texture_rate: f64,
        #[serde(rename = "sigma")]
        mean_square: f64,
    },
    /// Fisher power: gamma speckle × inverse-gamma texture.
    Fisher {
        #[serde(rename = "L")]
        speckle_shape: f64,
        #[serde(rename = "M")]
        texture_shape: f64,
        #[serde(rename = "mu")]
        mean: f64,
    },
    /// `mu / G` with G a unit-mean gamma of shape `M`; the texture factor of [`ClutterModel::Fisher`].
    InverseGamma {
        #[serde(rename = "M")]
        shape: f64,
        #[serde(rename = "mu")]
        scale: f64,
    },
}

/// Family tag of a [`ClutterModel`], without parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Exponential,
    Gamma,
    Nakagami,
    Maxwell,
    Weibull,
    Rayleigh,
    GammaGamma,
    KAmplitude,
    WeibullNakagami,
    Fisher,
    InverseGamma,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Exponential,
        Family::Gamma,
        Family::Nakagami,
        Family::Maxwell,
        Family::Weibull,
        Family::Rayleigh,
        Family::GammaGamma,
        Family::KAmplitude,
        Family::WeibullNakagami,
        Family::Fisher,
        Family::InverseGamma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Exponential => "exponential",
            Family::Gamma => "gamma",
            Family::Nakagami => "nakagami",
            Family::Maxwell => "maxwell",
            Family::Weibull => "weibull",
            Family::Rayleigh => "rayleigh",
            Family::GammaGamma => "gamma_gamma",
            Family::KAmplitude => "k_amplitude",
            Family::WeibullNakagami => "weibull_nakagami",
            Family::Fisher => "fisher",
            Family::InverseGamma => "inverse_gamma",
        }
    }

    /// Serialized parameter names, in declaration order.
    pub fn parameter_names(self) -> &'static [&'static str] {
        match self {
            Family::Exponential => &["mu"],
            Family::Gamma | Family::Nakagami => &["L", "mu"],
            Family::Maxwell => &["sigma"],
            Family::Weibull => &["b", "z"],
            Family::Rayleigh => &["z"],
            Family::GammaGamma | Family::Fisher => &["L", "M", "mu"],
            Family::KAmplitude => &["alpha", "b", "mu"],
            Family::WeibullNakagami => &["c", "alpha", "b", "sigma"],
            Family::InverseGamma => &["M", "mu"],
        }
    }

    pub fn is_compound(self) -> bool {
        matches!(
            self,
            Family::GammaGamma | Family::KAmplitude | Family::WeibullNakagami | Family::Fisher
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.trim().to_ascii_lowercase().replace('-', "_");
        let alias = match normalized.as_str() {
            "gg" | "generalized_gamma" | "gammagamma" => "gamma_gamma",
            "k" | "kamplitude" | "k_distribution" => "k_amplitude",
            "wn" | "weibullnakagami" => "weibull_nakagami",
            "inversegamma" => "inverse_gamma",
            other => other,
        };
        Family::ALL
            .into_iter()
            .find(|f| f.name() == alias)
            .ok_or_else(|| Error::Invalid(format!("unknown model family `{s}`")))
    }
}

/// Speckle and texture factors of a compound model.
///
/// The compound variable is the product `speckle · texture` of independent
/// draws, so its second-kind characteristic function is the product of theirs.
/// The speckle factor is unit scale; all scale lives in the texture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub speckle: ClutterModel,
    pub texture: ClutterModel,
}

fn check(field: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter { field, value })
    }
}

impl ClutterModel {
    pub fn family(&self) -> Family {
        match self {
            ClutterModel::Exponential { .. } => Family::Exponential,
            ClutterModel::Gamma { .. } => Family::Gamma,
            ClutterModel::Nakagami { .. } => Family::Nakagami,
            ClutterModel::Maxwell { .. } => Family::Maxwell,
            ClutterModel::Weibull { .. } => Family::Weibull,
            ClutterModel::Rayleigh { .. } => Family::Rayleigh,
            ClutterModel::GammaGamma { .. } => Family::GammaGamma,
            ClutterModel::KAmplitude { .. } => Family::KAmplitude,
            ClutterModel::WeibullNakagami { .. } => Family::WeibullNakagami,
            ClutterModel::Fisher { .. } => Family::Fisher,
            ClutterModel::InverseGamma { .. } => Family::InverseGamma,
        }
    }

    /// Parameters as (serialized name, value) pairs, in the order of
    /// [`Family::parameter_names`].
    pub fn parameters(&self) -> Vec<(&'static str, f64)> {
        let values: Vec<f64> = match *self {
            ClutterModel::Exponential { mean } => vec![mean],
            ClutterModel::Gamma { shape, mean } => vec![shape, mean],
            ClutterModel::Nakagami { shape, scale } => vec![shape, scale],
            ClutterModel::Maxwell { scale } => vec![scale],
            ClutterModel::Weibull { shape, scale } => vec![shape, scale],
            ClutterModel::Rayleigh { scale } => vec![scale],
            ClutterModel::GammaGamma {
                speckle_shape,
                texture_shape,
                mean,
            }
            | ClutterModel::Fisher {
                speckle_shape,
                texture_shape,
                mean,
            } => vec![speckle_shape, texture_shape, mean],
            ClutterModel::KAmplitude {
                texture_shape,
                texture_rate,
                scale,
            } => vec![texture_shape, texture_rate, scale],
            ClutterModel::WeibullNakagami {
                weibull_shape,
                texture_shape,
                texture_rate,
                mean_square,
            } => vec![weibull_shape, texture_shape, texture_rate, mean_square],
            ClutterModel::InverseGamma { shape, scale } => vec![shape, scale],
        };
        self.family()
            .parameter_names()
            .iter()
            .copied()
            .zip(values)
            .collect()
    }

    /// Returns the model unchanged when every parameter is positive and finite.
    pub fn validate(self) -> Result<Self> {
        for (field, value) in self.parameters() {
            check(field, value)?;
        }
        Ok(self)
    }

    /// A length scale near the bulk of the distribution, used to place quadrature nodes.
    pub fn typical_scale(&self) -> f64 {
        match *self {
            ClutterModel::Exponential { mean } => mean,
            ClutterModel::Gamma { mean, .. } => mean,
            ClutterModel::Nakagami { scale, .. } => scale,
            ClutterModel::Maxwell { scale } => scale,
            ClutterModel::Weibull { scale, .. } => scale,
            ClutterModel::Rayleigh { scale } => scale,
            ClutterModel::GammaGamma { mean, .. } => mean,
            ClutterModel::KAmplitude {
                texture_shape,
                texture_rate,
                scale,
            } => scale * (texture_shape / texture_rate).sqrt(),
            ClutterModel::WeibullNakagami {
                texture_shape,
                texture_rate,
                mean_square,
                ..
            } => (mean_square * texture_shape / texture_rate).sqrt(),
            ClutterModel::Fisher { mean, .. } => mean,
            ClutterModel::InverseGamma { scale, .. } => scale,
        }
    }

    /// Probability density at `x > 0`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        if !(x > 0.0) || !x.is_finite() {
            return Err(Error::Domain {
                what: "pdf requires a finite x > 0",
                value: x,
            });
        }
        self.validate()?;
        let value = match *self {
            ClutterModel::WeibullNakagami {
                weibull_shape,
                texture_shape,
                texture_rate,
                mean_square,
            } => weibull_nakagami_pdf(weibull_shape, texture_shape, texture_rate, mean_square, x)?,
            _ => self.ln_pdf_closed(x)?.exp(),
        };
        if !value.is_finite() {
            return Err(Error::Overflow("pdf"));
        }
        Ok(value)
    }

    fn ln_pdf_closed(&self, x: f64) -> Result<f64> {
        let ln_x = x.ln();
        let value = match *self {
            ClutterModel::Exponential { mean } => gamma_ln_pdf(1.0, mean, x)?,
            ClutterModel::Gamma { shape, mean } => gamma_ln_pdf(shape, mean, x)?,
            ClutterModel::Nakagami { shape, scale } => {
                LN_2 - log_gamma(shape)?
                    + 2.0 * shape * (shape.sqrt() / scale).ln()
                    + (2.0 * shape - 1.0) * ln_x
                    - shape * (x / scale).powi(2)
            }
            ClutterModel::Maxwell { scale } => {
                0.5 * (2.0 / PI).ln() - 3.0 * scale.ln() + 2.0 * ln_x
                    - x * x / (2.0 * scale * scale)
            }
            ClutterModel::Weibull { shape, scale } => {
                let ratio = x / scale;
                (shape / scale).ln() + (shape - 1.0) * ratio.ln() - ratio.powf(shape)
            }
            ClutterModel::Rayleigh { scale } => {
                LN_2 + ln_x - 2.0 * scale.ln() - (x / scale).powi(2)
            }
            ClutterModel::GammaGamma {
                speckle_shape: l,
                texture_shape: m,
                mean,
            } => {
                let rate = l * m / mean;
                let half_sum = 0.5 * (l + m);
                LN_2 - log_gamma(l)? - log_gamma(m)?
                    + half_sum * rate.ln()
                    + (half_sum - 1.0) * ln_x
                    + ln_bessel_k(m - l, 2.0 * (rate * x).sqrt())?
            }
            ClutterModel::KAmplitude {
                texture_shape: alpha,
                texture_rate: b,
                scale,
            } => {
                let r = x / scale;
                2.0 * LN_2 + 0.5 * (alpha + 1.0) * b.ln() + alpha * r.ln() - log_gamma(alpha)?
                    + ln_bessel_k(alpha - 1.0, 2.0 * r * b.sqrt())?
                    - scale.ln()
            }
            ClutterModel::Fisher {
                speckle_shape: l,
                texture_shape: m,
                mean,
            } => {
                let rate = l / (m * mean);
                let lambda = rate * x;
                log_gamma(l + m)? - log_gamma(l)? - log_gamma(m)?
                    + rate.ln()
                    + (l - 1.0) * lambda.ln()
                    - (l + m) * lambda.ln_1p()
            }
            ClutterModel::InverseGamma { shape, scale } => {
                let theta = shape * scale;
                shape * theta.ln() - log_gamma(shape)? - (shape + 1.0) * ln_x - theta / x
            }
            ClutterModel::WeibullNakagami { .. } => unreachable!("evaluated by quadrature"),
        };
        Ok(value)
    }

    /// Split a compound model into unit-scale speckle and texture factors.
    pub fn decompose(&self) -> Result<Decomposition> {
        let model = self.validate()?;
        let (speckle, texture) = match model {
            ClutterModel::GammaGamma {
                speckle_shape,
                texture_shape,
                mean,
            } => (
                ClutterModel::Gamma {
                    shape: speckle_shape,
                    mean: 1.0,
                },
                ClutterModel::Gamma {
                    shape: texture_shape,
                    mean,
                },
            ),
            // Rayleigh with mean-square z, z ~ Gamma(alpha, rate b): in amplitude
            // terms the texture is √z, which is Nakagami(alpha, √(alpha/b)).
            ClutterModel::KAmplitude {
                texture_shape,
                texture_rate,
                scale,
            } => (
                ClutterModel::Rayleigh { scale: 1.0 },
                ClutterModel::Nakagami {
                    shape: texture_shape,
                    scale: scale * (texture_shape / texture_rate).sqrt(),
                },
            ),
            ClutterModel::WeibullNakagami {
                weibull_shape,
                texture_shape,
                texture_rate,
                mean_square,
            } => (
                ClutterModel::Weibull {
                    shape: weibull_shape,
                    scale: 1.0,
                },
                ClutterModel::Nakagami {
                    shape: texture_shape,
                    scale: (mean_square * texture_shape / texture_rate).sqrt(),
                },
            ),
            ClutterModel::Fisher {
                speckle_shape,
                texture_shape,
                mean,
            } => (
                ClutterModel::Gamma {
                    shape: speckle_shape,
                    mean: 1.0,
                },
                ClutterModel::InverseGamma {
                    shape: texture_shape,
                    scale: mean,
                },
            ),
            other => return Err(Error::NotCompound(other.family().name())),
        };
        Ok(Decomposition { speckle, texture })
    }
}

impl fmt::Display for ClutterModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.family())?;
        for (i, (name, value)) in self.parameters().into_iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{name}={value}")?;
        }
        write!(f, "}}")
    }
}

fn gamma_ln_pdf(shape: f64, mean: f64, x: f64) -> Result<f64> {
    let rate = shape / mean;
    Ok(shape * rate.ln() - log_gamma(shape)? + (shape - 1.0) * x.ln() - rate * x)
}

fn weibull_nakagami_pdf(c: f64, alpha: f64, b: f64, sigma: f64, r: f64) -> Result<f64> {
    let root_sigma = sigma.sqrt();
    let r = r / root_sigma;
    let ln_norm = (2.0 * c).ln() + alpha * b.ln() - log_gamma(alpha)?;
    let ln_r = r.ln();
    // c b^α / Γ(α) · 2 r^{c-1} z^{2α-1-c} exp(-(r/z)^c - b z²)
    let integrand = |z: f64| {
        let ln_z = z.ln();
        let ln_f = ln_norm + (c - 1.0) * ln_r + (2.0 * alpha - 1.0 - c) * ln_z
            - (c * (ln_r - ln_z)).exp()
            - b * z * z;
        ln_f.exp()
    };
    let tol = Tolerance {
        abs_tol: 1e-300,
        rel_tol: 1e-12,
        max_subdivisions: 4000,
    };
    let value = integrate_semi_infinite_scaled(integrand, r, &tol)?;
    Ok(value / root_sigma)
}

/// Density of the product `speckle · texture` by direct Mellin convolution,
/// f(x) = ∫ f_speckle(x / z) f_texture(z) dz / z.
pub fn mellin_convolution_pdf(parts: &Decomposition, x: f64, tol: &Tolerance) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain {
            what: "pdf requires x > 0",
            value: x,
        });
    }
    let failure = std::cell::Cell::new(None);
    let integrand = |z: f64| {
        let speckle = parts.speckle.pdf(x / z);
        let texture = parts.texture.pdf(z);
        match (speckle, texture) {
            (Ok(a), Ok(b)) => a * b / z,
            (Err(e), _) | (_, Err(e)) => {
                failure.set(Some(e));
                0.0
            }
        }
    };
    let value = integrate_semi_infinite_scaled(integrand, parts.texture.typical_scale(), tol)?;
    if let Some(e) = failure.take() {
        return Err(e);
    }
    Ok(value)
}
