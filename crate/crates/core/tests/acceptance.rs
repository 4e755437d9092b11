//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines are always printed.

#![allow(
    clippy::neg_cmp_op_on_partial_ord,
    clippy::type_complexity,
    clippy::needless_range_loop
)]

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use common::{family_counts, parameter_grid, rel_err, tight};
use mellin_clutter::estimate::{batch_standard_errors, fit_orders};
use mellin_clutter::simulate::BATCHES;
use mellin_clutter::specfun::{digamma, integrate_semi_infinite_scaled, log_gamma, polygamma};
use mellin_clutter::{
    analyticity_strip, classical_moment, empirical_log_cumulants, figure1_experiment, fit_molc,
    log_cumulants, log_cumulants_numeric, phi, phi_numeric, sample, ClutterModel, Error, Family,
    Fig1Config, RngState,
};

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self {
            pass,
            detail: detail.into(),
            notes: Vec::new(),
        }
    }
}

fn criterion_1() -> Outcome {
    let value = digamma(1.0).unwrap();
    let printed = format!("{:.6}", (value * 1e6).trunc() / 1e6);
    Outcome::new(
        printed == "-0.577215",
        format!("digamma(1) = {value:.10} -> {printed}"),
    )
}

fn criterion_2() -> Outcome {
    let grid = parameter_grid();
    let tol = tight();
    let mut worst = (0.0f64, String::new());
    let mut failures = 0;
    for model in &grid {
        let total =
            integrate_semi_infinite_scaled(|x| model.pdf(x).unwrap(), model.typical_scale(), &tol);
        let err = match total {
            Ok(v) => (v - 1.0).abs(),
            Err(_) => f64::INFINITY,
        };
        if !(err <= 1e-6) {
            failures += 1;
        }
        if !(err <= worst.0) {
            worst = (err, model.to_string());
        }
    }
    let families = family_counts(&grid).len();
    Outcome::new(
        failures == 0 && families == 10 && grid.len() >= 36,
        format!(
            "{} cases over {families} families, {failures} failures, worst |∫f − 1| = {:.2e} ({})",
            grid.len(),
            worst.0,
            worst.1
        ),
    )
}

fn criterion_3() -> Outcome {
    let grid = parameter_grid();
    let tol = tight();
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    let mut per_family = std::collections::HashMap::new();
    for model in &grid {
        let strip = analyticity_strip(model);
        for s in [0.5, 1.5, 2.0, 3.0, 3.9] {
            if !strip.contains(s) {
                continue;
            }
            *per_family.entry(model.family()).or_insert(0usize) += 1;
            let err = match (phi(model, s), phi_numeric(model, s, &tol)) {
                (Ok(a), Ok(b)) => rel_err(b, a),
                _ => f64::INFINITY,
            };
            worst = worst.max(err);
            if !(err <= 1e-6) {
                failures.push(format!("{model} at s = {s}: {err:.2e}"));
            }
        }
    }
    let min_points = per_family.values().copied().min().unwrap_or(0);
    let mut outcome = Outcome::new(
        failures.is_empty() && per_family.len() == 10 && min_points >= 5,
        format!(
            "{} comparisons, at least {min_points} strip points per family, worst relative error {worst:.2e}",
            per_family.values().sum::<usize>()
        ),
    );
    outcome.notes = failures;
    outcome
}

fn criterion_4() -> Outcome {
    let mut grid = parameter_grid();
    grid.push(ClutterModel::InverseGamma {
        shape: 3.0,
        scale: 2.0,
    });
    let mut failures = Vec::new();
    let mut worst = [0.0f64; 4];
    for model in &grid {
        let exact = log_cumulants(model, 4).unwrap();
        let numeric = match log_cumulants_numeric(model, 4) {
            Ok(v) => v,
            Err(e) => {
                failures.push(format!("{model}: {e}"));
                continue;
            }
        };
        for n in 0..4 {
            let err = (exact.values[n] - numeric.values[n]).abs();
            let limit = if n < 2 { 1e-5 } else { 1e-3 };
            worst[n] = worst[n].max(err);
            if !(err <= limit) {
                failures.push(format!("{model} order {}: {err:.2e}", n + 1));
            }
        }
    }
    let mut outcome = Outcome::new(
        failures.is_empty(),
        format!(
            "{} models, worst |closed − numeric| by order: {:.1e} {:.1e} {:.1e} {:.1e}",
            grid.len(),
            worst[0],
            worst[1],
            worst[2],
            worst[3]
        ),
    );
    outcome.notes = failures;
    outcome.notes.extend(alternative_form_notes());
    outcome
}

/// Alternative closed forms that drop a factor's contribution, compared with
/// the finite-difference derivative of Ψ.
fn alternative_form_notes() -> Vec<String> {
    let pg = |m: usize, x: f64| polygamma(m, x).unwrap();
    let mut notes = Vec::new();

    let k = ClutterModel::KAmplitude {
        texture_shape: 2.0,
        texture_rate: 1.0,
        scale: 1.0,
    };
    let numeric = log_cumulants_numeric(&k, 2).unwrap().values[1];
    let texture_only = 0.25 * pg(1, 2.0);
    notes.push(format!(
        "k_amplitude(alpha=2,b=1) k2: 2^-n psi'(alpha) alone = {texture_only:.7}, derivative of Psi = {numeric:.7}; the Rayleigh term 2^-n psi^(n-1)(1) is required"
    ));

    let wn = ClutterModel::WeibullNakagami {
        weibull_shape: 1.5,
        texture_shape: 2.0,
        texture_rate: 1.0,
        mean_square: 1.0,
    };
    let numeric = log_cumulants_numeric(&wn, 2).unwrap().values[1];
    let texture_only = 0.25 * pg(1, 2.0);
    notes.push(format!(
        "weibull_nakagami(c=1.5,alpha=2) k2: 2^-n psi'(alpha) alone = {texture_only:.7}, derivative of Psi = {numeric:.7}; the Weibull term c^-n psi^(n-1)(1) is required"
    ));

    let fisher = ClutterModel::Fisher {
        speckle_shape: 2.0,
        texture_shape: 3.0,
        mean: 1.0,
    };
    let numeric = log_cumulants_numeric(&fisher, 1).unwrap().values[0];
    let plus = (pg(0, 2.0) - 2f64.ln()) + (pg(0, 3.0) - 3f64.ln());
    let minus = (pg(0, 2.0) - 2f64.ln()) - (pg(0, 3.0) - 3f64.ln());
    notes.push(format!(
        "fisher(L=2,M=3,mu=1) k1: with +[psi(M) - ln M] = {plus:.7}, with -[psi(M) - ln M] = {minus:.7}, derivative of Psi = {numeric:.7}"
    ));

    let nakagami = ClutterModel::Nakagami {
        shape: 2.0,
        scale: 1.0,
    };
    let numeric = log_cumulants_numeric(&nakagami, 1).unwrap().values[0];
    notes.push(format!(
        "nakagami(L=2,mu=1) k1: ln(mu/sqrt L) + psi(L)/2 = {:.7}, derivative of Psi = {numeric:.7}",
        -0.5 * 2f64.ln() + 0.5 * pg(0, 2.0)
    ));
    notes
}

/// Compound Φ(s) written out directly in terms of gamma functions.
fn compound_phi_direct(model: &ClutterModel, s: f64) -> f64 {
    let lg = |x: f64| log_gamma(x).unwrap();
    let t = s - 1.0;
    let log_phi = match *model {
        ClutterModel::GammaGamma {
            speckle_shape: l,
            texture_shape: m,
            mean,
        } => t * (mean / (l * m)).ln() + lg(l + t) + lg(m + t) - lg(l) - lg(m),
        ClutterModel::KAmplitude {
            texture_shape: a,
            texture_rate: b,
            scale,
        } => t * scale.ln() - 0.5 * t * b.ln() + lg(0.5 * (s + 1.0)) + lg(a + 0.5 * t) - lg(a),
        ClutterModel::WeibullNakagami {
            weibull_shape: c,
            texture_shape: a,
            texture_rate: b,
            mean_square,
        } => 0.5 * t * (mean_square / b).ln() + lg(1.0 + t / c) + lg(a + 0.5 * t) - lg(a),
        ClutterModel::Fisher {
            speckle_shape: l,
            texture_shape: m,
            mean,
        } => t * (m * mean / l).ln() + lg(l + t) + lg(m - t) - lg(l) - lg(m),
        _ => unreachable!("not a compound model"),
    };
    log_phi.exp()
}

fn criterion_5() -> Outcome {
    let compounds: Vec<ClutterModel> = parameter_grid()
        .into_iter()
        .filter(|m| m.family().is_compound())
        .collect();
    let mut worst_product = 0.0f64;
    let mut worst_sum = 0.0f64;
    let mut families = std::collections::HashSet::new();
    for model in &compounds {
        families.insert(model.family());
        let parts = model.decompose().unwrap();
        let strip = analyticity_strip(model);
        for s in [-0.5, 0.25, 0.5, 0.75, 1.25, 1.5, 2.0, 3.0, 3.9] {
            if !strip.contains(s) {
                continue;
            }
            let direct = compound_phi_direct(model, s);
            let c = phi(model, s).unwrap();
            let p = phi(&parts.speckle, s).unwrap() * phi(&parts.texture, s).unwrap();
            worst_product = worst_product
                .max(rel_err(p, direct))
                .max(rel_err(c, direct));
        }
        let k = log_cumulants(model, 6).unwrap();
        let a = log_cumulants(&parts.speckle, 6).unwrap();
        let b = log_cumulants(&parts.texture, 6).unwrap();
        for n in 0..6 {
            worst_sum = worst_sum.max((k.values[n] - a.values[n] - b.values[n]).abs());
        }
    }
    Outcome::new(
        worst_product <= 1e-10 && worst_sum <= 1e-10 && families.len() == 4,
        format!(
            "{} compound models, worst product relative error {worst_product:.1e}, worst cumulant sum error {worst_sum:.1e}",
            compounds.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    for mu in [0.5f64, 1.0, 2.0, 3.0] {
        let mut factorial = 1.0;
        for n in 1..=6usize {
            factorial *= n as f64;
            let expected = mu.powi(n as i32) * factorial;
            let got = classical_moment(&ClutterModel::Exponential { mean: mu }, n).unwrap();
            if got != expected {
                failures.push(format!("exponential mu={mu} n={n}: {got} != {expected}"));
            }
        }
    }
    for z in [0.5, 1.0, 2.0, 3.0] {
        let got = classical_moment(&ClutterModel::Rayleigh { scale: z }, 2).unwrap();
        if got != z * z {
            failures.push(format!("rayleigh z={z}: m2 = {got} != {}", z * z));
        }
    }
    let maxwell = ClutterModel::Maxwell { scale: 1.3 };
    let by_quadrature =
        integrate_semi_infinite_scaled(|x| x * x * maxwell.pdf(x).unwrap(), 1.3, &tight()).unwrap();
    let closed = classical_moment(&maxwell, 2).unwrap();
    let maxwell_err = rel_err(closed, by_quadrature);
    if !(maxwell_err <= 1e-6 && rel_err(closed, 3.0 * 1.3 * 1.3) <= 1e-12) {
        failures.push(format!("maxwell m2 {closed} vs quadrature {by_quadrature}"));
    }
    for (m, n) in [(1.5, 2usize), (2.0, 2), (0.5, 1), (3.0, 3)] {
        let fisher = ClutterModel::Fisher {
            speckle_shape: 2.0,
            texture_shape: m,
            mean: 1.0,
        };
        match classical_moment(&fisher, n) {
            Err(Error::MomentDiverges { .. }) => {}
            other => failures.push(format!(
                "fisher M={m} n={n}: expected divergence, got {other:?}"
            )),
        }
    }
    let fisher_ok = classical_moment(
        &ClutterModel::Fisher {
            speckle_shape: 2.0,
            texture_shape: 2.5,
            mean: 1.0,
        },
        2,
    )
    .is_ok();
    if !fisher_ok {
        failures.push("fisher M=2.5 n=2 should be finite".into());
    }
    let mut outcome = Outcome::new(
        failures.is_empty(),
        format!("exponential/rayleigh exact, maxwell quadrature error {maxwell_err:.1e}, fisher divergence raised"),
    );
    outcome.notes = failures;
    outcome
}

fn criterion_7() -> Outcome {
    let models = [
        ClutterModel::Gamma {
            shape: 4.0,
            mean: 1.0,
        },
        ClutterModel::Weibull {
            shape: 1.7,
            scale: 2.0,
        },
        ClutterModel::Rayleigh { scale: 1.0 },
        ClutterModel::GammaGamma {
            speckle_shape: 4.0,
            texture_shape: 2.0,
            mean: 1.0,
        },
        ClutterModel::KAmplitude {
            texture_shape: 2.0,
            texture_rate: 2.0,
            scale: 1.0,
        },
    ];
    let mut pass = true;
    let mut notes = Vec::new();
    let mut worst: f64 = 0.0;
    for model in &models {
        let data = sample(model, 1_000_000, RngState::new(42)).unwrap();
        let est = empirical_log_cumulants(&data, 2).unwrap();
        let se = batch_standard_errors(&data, BATCHES, |s| empirical_log_cumulants(s, 2)).unwrap();
        let exact = log_cumulants(model, 2).unwrap();
        let z: Vec<f64> = (0..2)
            .map(|n| (est.values[n] - exact.values[n]).abs() / se[n])
            .collect();
        worst = worst.max(z[0]).max(z[1]);
        let ok = z.iter().all(|&v| v <= 4.0);
        pass &= ok;
        notes.push(format!(
            "{model}: k1 {:.6} vs {:.6} ({:.2} s.e.), k2 {:.6} vs {:.6} ({:.2} s.e.){}",
            est.values[0],
            exact.values[0],
            z[0],
            est.values[1],
            exact.values[1],
            z[1],
            if ok { "" } else { "  <-- outside 4 s.e." }
        ));
    }
    let mut outcome = Outcome::new(
        pass,
        format!("5 families, N = 10^6, seed 42, largest deviation {worst:.2} s.e."),
    );
    outcome.notes = notes;
    outcome
}

fn round_trip_models() -> Vec<ClutterModel> {
    let mut models = Vec::new();
    for &l in &[0.5, 1.0, 2.0, 4.7] {
        for &mu in &[0.5, 3.0] {
            models.push(ClutterModel::Gamma { shape: l, mean: mu });
            models.push(ClutterModel::Nakagami {
                shape: l,
                scale: mu,
            });
            models.push(ClutterModel::Weibull {
                shape: l,
                scale: mu,
            });
            models.push(ClutterModel::InverseGamma {
                shape: l,
                scale: mu,
            });
            models.push(ClutterModel::KAmplitude {
                texture_shape: l,
                texture_rate: mu,
                scale: 1.0,
            });
        }
        for &m in &[0.5, 1.0, 2.0, 4.7] {
            models.push(ClutterModel::GammaGamma {
                speckle_shape: l.min(m),
                texture_shape: l.max(m),
                mean: 1.5,
            });
            models.push(ClutterModel::Fisher {
                speckle_shape: l,
                texture_shape: m,
                mean: 2.0,
            });
            models.push(ClutterModel::WeibullNakagami {
                weibull_shape: l,
                texture_shape: m,
                texture_rate: 1.0,
                mean_square: 2.0,
            });
        }
    }
    for &mu in &[0.5, 3.0] {
        models.push(ClutterModel::Exponential { mean: mu });
        models.push(ClutterModel::Maxwell { scale: mu });
        models.push(ClutterModel::Rayleigh { scale: mu });
    }
    models
}

fn max_param_rel_err(a: &ClutterModel, b: &ClutterModel) -> f64 {
    if a.family() != b.family() {
        return f64::INFINITY;
    }
    a.parameters()
        .iter()
        .zip(b.parameters())
        .map(|((_, x), (_, y))| rel_err(*x, y))
        .fold(0.0, f64::max)
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    let mut worst = 0.0f64;
    let mut families = std::collections::HashSet::new();
    let models = round_trip_models();
    for model in &models {
        families.insert(model.family());
        let orders = if model.family() == Family::WeibullNakagami {
            4
        } else {
            fit_orders(model.family())
        };
        let k = log_cumulants(model, orders).unwrap();
        let err = match fit_molc(model.family(), &k) {
            Ok(report) => max_param_rel_err(&report.model, model),
            Err(e) => {
                notes.push(format!("{model}: {e}"));
                f64::INFINITY
            }
        };
        if !(err <= 1e-6) {
            notes.push(format!("{model}: relative parameter error {err:.2e}"));
        }
        worst = worst.max(err);
    }

    let gamma = ClutterModel::Gamma {
        shape: 4.0,
        mean: 1.0,
    };
    let data = sample(&gamma, 1_000_000, RngState::new(42)).unwrap();
    let fit = fit_molc(Family::Gamma, &empirical_log_cumulants(&data, 4).unwrap()).unwrap();
    let gamma_err = max_param_rel_err(&fit.model, &gamma);
    notes.push(format!(
        "sample fit of {gamma}: {} (max relative error {gamma_err:.4})",
        fit.model
    ));

    let gg = ClutterModel::GammaGamma {
        speckle_shape: 4.0,
        texture_shape: 2.0,
        mean: 1.0,
    };
    let data = sample(&gg, 1_000_000, RngState::new(42)).unwrap();
    let fit = fit_molc(
        Family::GammaGamma,
        &empirical_log_cumulants(&data, 4).unwrap(),
    )
    .unwrap();
    // the fit reports the shapes in canonical order L <= M
    let canonical = ClutterModel::GammaGamma {
        speckle_shape: 2.0,
        texture_shape: 4.0,
        mean: 1.0,
    };
    let gg_err = max_param_rel_err(&fit.model, &canonical);
    notes.push(format!(
        "sample fit of {gg}: {} (max relative error {gg_err:.4})",
        fit.model
    ));

    let pass =
        worst <= 1e-6 && families.len() == Family::ALL.len() && gamma_err <= 0.02 && gg_err <= 0.05;
    let mut outcome = Outcome::new(
        pass,
        format!(
            "{} exact round trips over {} families, worst relative error {worst:.1e}; sample fits gamma {:.2}%, gamma_gamma {:.2}%",
            models.len(),
            families.len(),
            100.0 * gamma_err,
            100.0 * gg_err
        ),
    );
    outcome.notes = notes;
    outcome
}

fn criterion_9() -> Outcome {
    let config = Fig1Config::default();
    let table = match figure1_experiment(&config) {
        Ok(t) => t,
        Err(e) => return Outcome::new(false, format!("experiment failed: {e}")),
    };
    let rows = &table.rows;
    let decreasing =
        |f: fn(&mellin_clutter::Fig1Row) -> f64| rows.windows(2).all(|w| f(&w[1]) < f(&w[0]));
    let k2_dec = decreasing(|r| r.k2_texture_theory);
    let k4_dec = decreasing(|r| r.k4_texture_theory);
    let last = rows.last().unwrap();
    let tails = last.k2_texture_theory < 0.07 && last.k4_texture_theory < 0.01;

    let mut notes = Vec::new();
    let mut within = true;
    for r in rows {
        let z2 = (r.k2_texture_est - r.k2_texture_theory).abs() / r.k2_texture_se;
        let z4 = (r.k4_texture_est - r.k4_texture_theory).abs() / r.k4_texture_se;
        within &= z2 <= 4.0 && z4 <= 4.0;
        notes.push(format!(
            "M = {:>8.5}: k2 {:.5} est {:.5} ({:.2} s.e.), k4 {:.5} est {:.5} ({:.2} s.e.)",
            r.m,
            r.k2_texture_theory,
            r.k2_texture_est,
            z2,
            r.k4_texture_theory,
            r.k4_texture_est,
            z4
        ));
    }

    let small: Vec<_> = rows
        .iter()
        .filter(|r| r.m == 0.25 || (r.m - 0.5).abs() < 1e-12)
        .collect();
    let large: Vec<_> = rows.iter().filter(|r| r.m >= 1.0 - 1e-12).collect();
    let elevated = small.len() == 2
        && !large.is_empty()
        && small.iter().all(|s| {
            large.iter().all(|l| {
                s.k2_texture_theory > l.k2_texture_theory
                    && s.k4_texture_theory > l.k4_texture_theory
            })
        });

    let mut outcome = Outcome::new(
        k2_dec && k4_dec && tails && within && elevated,
        format!(
            "{} grid points; decreasing k2 {k2_dec}, k4 {k4_dec}; final k2 {:.4}, k4 {:.5}; estimates within 4 s.e. {within}; M < 1 elevated {elevated}",
            rows.len(),
            last.k2_texture_theory,
            last.k4_texture_theory
        ),
    );
    outcome.notes = notes;
    outcome
}

fn run_cli(args: &[&str], threads: &str) -> Result<(Vec<u8>, Vec<u8>), String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("out");
    let output = Command::new(env!("CARGO_BIN_EXE_mellin-clutter"))
        .args(args)
        .arg("--out")
        .arg(&out)
        .env("RAYON_NUM_THREADS", threads)
        .output()
        .map_err(|e| e.to_string())?;
    if !output.status.success() {
        return Err(String::from_utf8_lossy(&output.stderr).into_owned());
    }
    let file = std::fs::read(&out).map_err(|e| e.to_string())?;
    Ok((file, output.stdout))
}

fn criterion_10() -> Outcome {
    let simulate = [
        "simulate",
        "--model",
        "k_amplitude",
        "--alpha",
        "1.5",
        "--b",
        "2",
        "--n",
        "200000",
        "--seed",
        "7",
    ];
    let figure1 = [
        "figure1",
        "--L",
        "4",
        "--mu",
        "1",
        "--m-grid",
        "0.25:16:13",
        "--n",
        "100000",
        "--seed",
        "42",
    ];
    let figure1_json = ["figure1", "--n", "20000", "--format", "json"];
    let mut checks = Vec::new();
    for (name, args) in [
        ("simulate", &simulate[..]),
        ("figure1", &figure1[..]),
        ("figure1 json", &figure1_json[..]),
    ] {
        let a = run_cli(args, "1");
        let b = run_cli(args, "4");
        let c = run_cli(args, "4");
        let same = match (&a, &b, &c) {
            (Ok(a), Ok(b), Ok(c)) => a == b && b == c && !a.0.is_empty(),
            _ => false,
        };
        checks.push((name, same));
    }
    let pass = checks.iter().all(|(_, ok)| *ok);
    Outcome::new(
        pass,
        checks
            .iter()
            .map(|(name, ok)| format!("{name}: {}", if *ok { "identical" } else { "DIFFERENT" }))
            .collect::<Vec<_>>()
            .join(", ")
            + " (3 runs each, 1 and 4 threads)",
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 10] = [
        ("digamma(1) constant", criterion_1, Duration::from_secs(1)),
        (
            "pdf normalization suite",
            criterion_2,
            Duration::from_secs(30),
        ),
        (
            "transform vs quadrature",
            criterion_3,
            Duration::from_secs(60),
        ),
        (
            "log-cumulants vs derivatives of Psi",
            criterion_4,
            Duration::from_secs(10),
        ),
        (
            "product and additivity",
            criterion_5,
            Duration::from_secs(10),
        ),
        ("classical moments", criterion_6, Duration::from_secs(1)),
        (
            "Monte Carlo consistency",
            criterion_7,
            Duration::from_secs(120),
        ),
        ("MoLC round trips", criterion_8, Duration::from_secs(120)),
        (
            "texture log-cumulant sweep",
            criterion_9,
            Duration::from_secs(300),
        ),
        ("determinism", criterion_10, Duration::from_secs(300)),
    ];
    let mut failed = 0;
    println!();
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= *budget;
        let pass = outcome.pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {} [{:.2}s of {}s]",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        for note in &outcome.notes {
            println!("    {note}");
        }
    }
    println!(
        "\nacceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
