//! Second-kind (Mellin-transform) statistics for radar clutter models.
//!
//! The crate evaluates closed-form Mellin transforms, classical moments,
//! log-moments and log-cumulants for simple and compound clutter families,
//! estimates them from data, fits parameters by the method of log-cumulants,
//! and simulates samples.
//!
//! ```
//! use mellin_clutter::{log_cumulants, ClutterModel};
//!
//! let model = ClutterModel::Gamma { shape: 2.0, mean: 1.0 };
//! let k = log_cumulants(&model, 2).unwrap();
//! // k̃₂ = ψ'(2) = π²/6 − 1
//! assert!((k.values[1] - (std::f64::consts::PI.powi(2) / 6.0 - 1.0)).abs() < 1e-12);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod estimate;
pub mod mellin;
pub mod models;
pub mod simulate;
pub mod specfun;

pub use error::{Error, Result};
pub use estimate::{
    empirical_log_cumulants, empirical_log_moments, fit_molc, fit_molc_with, invert_trigamma,
    texture_log_cumulants, FitOptions, FitReport, SampleSet,
};
pub use mellin::{
    analyticity_strip, classical_moment, convert, log_cumulants, log_cumulants_numeric,
    log_moments, phi, phi_numeric, psi, AnalyticityStrip, Convention, LogStats, StatKind,
};
pub use models::{mellin_convolution_pdf, ClutterModel, Decomposition, Family};
pub use simulate::{
    figure1_experiment, sample, sample_product, Fig1Config, Fig1Row, Fig1Table, RngState,
};

/// Code blocks of the guide in `book/`, compiled as doctests.
#[cfg(doctest)]
mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/mellin.md")]
    mod mellin {}
    #[doc = include_str!("../../../book/src/log-cumulants.md")]
    mod log_cumulants {}
    #[doc = include_str!("../../../book/src/fitting.md")]
    mod fitting {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    mod simulation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
