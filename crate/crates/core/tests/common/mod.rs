#![allow(dead_code)]

use mellin_clutter::specfun::Tolerance;
use mellin_clutter::{ClutterModel, Family};

pub const SHAPES: [f64; 4] = [0.5, 1.0, 2.0, 4.7];
pub const SCALES: [f64; 3] = [0.5, 1.0, 3.0];

/// Parameter grid over the ten clutter families (the inverse gamma texture
/// factor is covered separately).
pub fn parameter_grid() -> Vec<ClutterModel> {
    let mut grid = Vec::new();
    for &mu in &SCALES {
        grid.push(ClutterModel::Exponential { mean: mu });
        grid.push(ClutterModel::Maxwell { scale: mu });
        grid.push(ClutterModel::Rayleigh { scale: mu });
        for &l in &SHAPES {
            grid.push(ClutterModel::Gamma { shape: l, mean: mu });
            grid.push(ClutterModel::Nakagami {
                shape: l,
                scale: mu,
            });
            grid.push(ClutterModel::Weibull {
                shape: l,
                scale: mu,
            });
        }
    }
    for &l in &SHAPES {
        for &m in &SHAPES {
            for &mu in &[0.5, 3.0] {
                grid.push(ClutterModel::GammaGamma {
                    speckle_shape: l,
                    texture_shape: m,
                    mean: mu,
                });
                grid.push(ClutterModel::Fisher {
                    speckle_shape: l,
                    texture_shape: m,
                    mean: mu,
                });
            }
            grid.push(ClutterModel::WeibullNakagami {
                weibull_shape: l,
                texture_shape: m,
                texture_rate: 1.0,
                mean_square: 1.0,
            });
        }
        for &b in &SCALES {
            grid.push(ClutterModel::KAmplitude {
                texture_shape: l,
                texture_rate: b,
                scale: 1.0,
            });
        }
    }
    grid
}

/// A smaller grid: one or two models per family including the texture factor.
pub fn small_grid() -> Vec<ClutterModel> {
    vec![
        ClutterModel::Exponential { mean: 2.0 },
        ClutterModel::Gamma {
            shape: 3.0,
            mean: 2.0,
        },
        ClutterModel::Gamma {
            shape: 0.5,
            mean: 1.0,
        },
        ClutterModel::Nakagami {
            shape: 2.0,
            scale: 1.0,
        },
        ClutterModel::Maxwell { scale: 1.0 },
        ClutterModel::Weibull {
            shape: 2.0,
            scale: 1.5,
        },
        ClutterModel::Weibull {
            shape: 0.7,
            scale: 1.0,
        },
        ClutterModel::Rayleigh { scale: 2.0 },
        ClutterModel::GammaGamma {
            speckle_shape: 4.0,
            texture_shape: 2.0,
            mean: 1.0,
        },
        ClutterModel::KAmplitude {
            texture_shape: 2.0,
            texture_rate: 1.0,
            scale: 1.0,
        },
        ClutterModel::KAmplitude {
            texture_shape: 0.8,
            texture_rate: 2.0,
            scale: 1.5,
        },
        ClutterModel::WeibullNakagami {
            weibull_shape: 1.5,
            texture_shape: 2.0,
            texture_rate: 1.0,
            mean_square: 2.0,
        },
        ClutterModel::Fisher {
            speckle_shape: 2.0,
            texture_shape: 3.0,
            mean: 1.0,
        },
        ClutterModel::InverseGamma {
            shape: 3.0,
            scale: 2.0,
        },
    ]
}

/// Families covered by the grid, with the number of models each.
pub fn family_counts(models: &[ClutterModel]) -> Vec<(Family, usize)> {
    Family::ALL
        .into_iter()
        .map(|f| (f, models.iter().filter(|m| m.family() == f).count()))
        .filter(|(_, n)| *n > 0)
        .collect()
}

pub fn tight() -> Tolerance {
    Tolerance::new(1e-300, 1e-10, 4000).unwrap()
}

pub fn rel_err(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}
