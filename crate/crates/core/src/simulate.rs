//! Seeded sampling for every family, product-model composition, and the
//! texture log-cumulant sweep over the gamma–gamma texture shape.
//!
//! Random numbers come from ChaCha8 (`rand_chacha`), seeded with
//! `seed_from_u64(seed)` and sub-stream `stream`. Uniform variates use 53-bit
//! mantissas on the open interval (0, 1).

use std::io::Write;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Open01};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimate::{
    batch_standard_errors, empirical_log_cumulants, empirical_log_moments, SampleSet,
};
use crate::mellin::{convert, log_cumulants, Convention, StatKind};
use crate::models::ClutterModel;
use crate::specfun::polygamma;

/// Seed and sub-stream selector of a ChaCha8 generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngState {
    pub seed: u64,
    pub stream: u64,
}

impl RngState {
    pub fn new(seed: u64) -> Self {
        Self { seed, stream: 0 }
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        Self { seed, stream }
    }

    pub fn generator(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

fn uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    Open01.sample(rng)
}

/// Gamma draw with the given shape and unit scale.
fn standard_gamma<R: Rng + ?Sized>(shape: f64, rng: &mut R) -> Result<f64> {
    let gamma = Gamma::new(shape, 1.0).map_err(|_| Error::Parameter {
        field: "shape",
        value: shape,
    })?;
    Ok(gamma.sample(rng))
}

/// −ln U, a unit exponential by inversion.
fn unit_exponential<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    -uniform(rng).ln()
}

fn draw<R: Rng + ?Sized>(model: &ClutterModel, rng: &mut R) -> Result<f64> {
    let value = match *model {
        ClutterModel::Exponential { mean } => mean * unit_exponential(rng),
        ClutterModel::Gamma { shape, mean } => mean * standard_gamma(shape, rng)? / shape,
        ClutterModel::Nakagami { shape, scale } => {
            scale * (standard_gamma(shape, rng)? / shape).sqrt()
        }
        ClutterModel::Maxwell { scale } => (2.0 * scale * scale * standard_gamma(1.5, rng)?).sqrt(),
        ClutterModel::Weibull { shape, scale } => scale * unit_exponential(rng).powf(1.0 / shape),
        ClutterModel::Rayleigh { scale } => scale * unit_exponential(rng).sqrt(),
        ClutterModel::InverseGamma { shape, scale } => scale * shape / standard_gamma(shape, rng)?,
        compound => {
            let parts = compound.decompose()?;
            let texture = draw(&parts.texture, rng)?;
            texture * draw(&parts.speckle, rng)?
        }
    };
    Ok(value)
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::Invalid("sample count must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `n` independent draws from `model`.
///
/// Compound models draw the texture first and then the speckle, both from the
/// same stream.
pub fn sample(model: &ClutterModel, n: usize, rng: RngState) -> Result<SampleSet> {
    let model = model.validate()?;
    check_count(n)?;
    let mut generator = rng.generator();
    let values = (0..n)
        .map(|_| draw(&model, &mut generator))
        .collect::<Result<Vec<_>>>()?;
    SampleSet::new(values)
}

/// `u_i · z_i` with speckle draws from stream `2·stream` and texture draws
/// from stream `2·stream + 1`.
pub fn sample_product(
    speckle: &ClutterModel,
    texture: &ClutterModel,
    n: usize,
    rng: RngState,
) -> Result<SampleSet> {
    let speckle = speckle.validate()?;
    let texture = texture.validate()?;
    check_count(n)?;
    let mut speckle_rng = RngState::with_stream(rng.seed, rng.stream.wrapping_mul(2)).generator();
    let mut texture_rng =
        RngState::with_stream(rng.seed, rng.stream.wrapping_mul(2).wrapping_add(1)).generator();
    let values = (0..n)
        .map(|_| Ok(draw(&speckle, &mut speckle_rng)? * draw(&texture, &mut texture_rng)?))
        .collect::<Result<Vec<_>>>()?;
    SampleSet::new(values)
}

/// Number of batches used for Monte Carlo standard errors.
pub const BATCHES: usize = 10;

/// Settings of the texture log-cumulant sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig1Config {
    /// Speckle shape (looks).
    #[serde(rename = "L")]
    pub speckle_shape: f64,
    /// Texture mean.
    pub mu: f64,
    /// Texture shapes, strictly increasing.
    #[serde(rename = "M_grid")]
    pub m_grid: Vec<f64>,
    pub samples_per_point: usize,
    pub seed: u64,
}

impl Default for Fig1Config {
    /// L = 4, mu = 1, 13 points spaced by √2 from 0.25 to 16, 10⁶ samples, seed 42.
    fn default() -> Self {
        Self {
            speckle_shape: 4.0,
            mu: 1.0,
            m_grid: log_grid(0.25, 16.0, 13).expect("valid default grid"),
            samples_per_point: 1_000_000,
            seed: 42,
        }
    }
}

impl Fig1Config {
    pub fn validate(&self) -> Result<()> {
        ClutterModel::Gamma {
            shape: self.speckle_shape,
            mean: self.mu,
        }
        .validate()?;
        if self.m_grid.is_empty() {
            return Err(Error::Invalid("M grid is empty".into()));
        }
        for &m in &self.m_grid {
            if !(m > 0.0 && m.is_finite()) {
                return Err(Error::Parameter {
                    field: "M",
                    value: m,
                });
            }
        }
        if self.m_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Invalid("M grid must be strictly increasing".into()));
        }
        if self.samples_per_point < 2 * BATCHES {
            return Err(Error::Invalid(format!(
                "samples_per_point must be at least {}",
                2 * BATCHES
            )));
        }
        Ok(())
    }
}

/// `points` log-spaced values from `lo` to `hi` inclusive.
pub fn log_grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>> {
    if !(lo > 0.0 && hi.is_finite() && hi > lo) {
        return Err(Error::Invalid(format!(
            "grid needs 0 < lo < hi, got {lo}:{hi}"
        )));
    }
    match points {
        0 => Err(Error::Invalid("grid needs at least 1 point".into())),
        1 => Ok(vec![lo]),
        _ => {
            let ratio = (hi / lo).ln() / (points - 1) as f64;
            let mut grid: Vec<f64> = (0..points).map(|i| lo * (ratio * i as f64).exp()).collect();
            grid[points - 1] = hi;
            Ok(grid)
        }
    }
}

/// One grid point of the sweep: data log-moments m̃₂, m̃₄ and texture
/// log-cumulants k̃₂, k̃₄, each theoretical and estimated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fig1Row {
    #[serde(rename = "M")]
    pub m: f64,
    pub m2_data_theory: f64,
    pub m2_data_est: f64,
    pub m4_data_theory: f64,
    pub m4_data_est: f64,
    pub k2_texture_theory: f64,
    pub k2_texture_est: f64,
    pub k4_texture_theory: f64,
    pub k4_texture_est: f64,
    /// Batch-means standard error of `k2_texture_est`.
    #[serde(skip)]
    pub k2_texture_se: f64,
    /// Batch-means standard error of `k4_texture_est`.
    #[serde(skip)]
    pub k4_texture_se: f64,
}

/// Rows of the sweep in grid order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Fig1Table {
    pub rows: Vec<Fig1Row>,
}

/// Column names of the CSV form, in order.
pub const FIG1_COLUMNS: [&str; 9] = [
    "M",
    "m2_data_theory",
    "m2_data_est",
    "m4_data_theory",
    "m4_data_est",
    "k2_texture_theory",
    "k2_texture_est",
    "k4_texture_theory",
    "k4_texture_est",
];

fn figure1_point(config: &Fig1Config, index: usize, m: f64) -> Result<Fig1Row> {
    let speckle = ClutterModel::Gamma {
        shape: config.speckle_shape,
        mean: 1.0,
    };
    let texture = ClutterModel::Gamma {
        shape: m,
        mean: config.mu,
    };
    let rng = RngState::new(config.seed ^ index as u64);
    let data = sample_product(&speckle, &texture, config.samples_per_point, rng)?;

    let compound = ClutterModel::GammaGamma {
        speckle_shape: config.speckle_shape,
        texture_shape: m,
        mean: config.mu,
    };
    let theory_moments = convert(
        &log_cumulants(&compound, 4)?,
        StatKind::LogMoments,
        Convention::Standard,
    )?;
    let est_moments = empirical_log_moments(&data, 4)?;
    let data_cumulants = empirical_log_cumulants(&data, 4)?;
    let speckle_cumulants = log_cumulants(&speckle, 4)?;
    let se = batch_standard_errors(&data, BATCHES, |s| empirical_log_cumulants(s, 4))?;

    Ok(Fig1Row {
        m,
        m2_data_theory: theory_moments.values[1],
        m2_data_est: est_moments.values[1],
        m4_data_theory: theory_moments.values[3],
        m4_data_est: est_moments.values[3],
        k2_texture_theory: polygamma(1, m)?,
        k2_texture_est: data_cumulants.values[1] - speckle_cumulants.values[1],
        k4_texture_theory: polygamma(3, m)?,
        k4_texture_est: data_cumulants.values[3] - speckle_cumulants.values[3],
        k2_texture_se: se[1],
        k4_texture_se: se[3],
    })
}

/// Run the sweep: for each texture shape M, simulate the gamma–gamma product
/// and compare estimated with theoretical log-statistics.
///
/// Grid point `i` uses seed `seed ^ i`, so the table does not depend on the
/// number of threads.
pub fn figure1_experiment(config: &Fig1Config) -> Result<Fig1Table> {
    config.validate()?;
    let rows = config
        .m_grid
        .par_iter()
        .enumerate()
        .map(|(i, &m)| {
            figure1_point(config, i, m).map_err(|e| Error::Invalid(format!("at M = {m}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Fig1Table { rows })
}

fn csv_error(e: csv::Error) -> Error {
    Error::Invalid(format!("CSV output failed: {e}"))
}

/// Write the table as CSV with the columns of [`FIG1_COLUMNS`].
pub fn write_fig1_csv<W: Write>(table: &Fig1Table, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for row in &table.rows {
        writer.serialize(row).map_err(csv_error)?;
    }
    writer.flush().map_err(|e| Error::Invalid(e.to_string()))
}

/// Write the table as a JSON array of row records.
pub fn write_fig1_json<W: Write>(table: &Fig1Table, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, table).map_err(|e| Error::Invalid(e.to_string()))?;
    writeln!(out).map_err(|e| Error::Invalid(e.to_string()))
}

/// Write samples as a one-column CSV with header `value`.
pub fn write_samples_csv<W: Write>(samples: &SampleSet, out: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    writer.write_record(["value"]).map_err(csv_error)?;
    for v in samples.values() {
        writer.write_record([format!("{v:?}")]).map_err(csv_error)?;
    }
    writer.flush().map_err(|e| Error::Invalid(e.to_string()))
}

/// Read a one-column CSV with header `value`.
pub fn read_samples_csv<R: std::io::Read>(input: R) -> Result<SampleSet> {
    let mut reader = csv::Reader::from_reader(input);
    let headers = reader.headers().map_err(csv_error)?.clone();
    if headers.len() != 1 || &headers[0] != "value" {
        return Err(Error::Invalid(format!(
            "expected a single `value` column, found {:?}",
            headers.iter().collect::<Vec<_>>()
        )));
    }
    let mut values = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record.map_err(csv_error)?;
        let field = record.get(0).unwrap_or("").trim();
        let value: f64 = field
            .parse()
            .map_err(|_| Error::Invalid(format!("row {}: `{field}` is not a number", line + 1)))?;
        values.push(value);
    }
    SampleSet::new(values)
}
