// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use super::{check_keys, Cell, CliError, CsvTable, Report};
use crate::config::Config;
use crate::ito_algebra::{
    coefficient_functions, interaction_exponent, ito_exp, DEFAULT_MAX_TERMS, DEFAULT_SERIES_TOL,
    EXCITED, GROUND,
};
use crate::lindblad::{
    coherence_shift, decay_rate, derive_master_equation, suppression_factor, Coupling, VacuumState,
};

const KEYS: &[&str] = &[
    "model.chi",
    "model.eta",
    "series.max_terms",
    "tolerance.series",
    "tolerance.residual",
];

pub(super) fn resolve(cfg: &mut Config) -> Result<(), CliError> {
    check_keys(cfg, "derive", KEYS, &[])?;
    finite(cfg.f64("model.chi")?, "model.chi")?;
    finite(cfg.f64("model.eta")?, "model.eta")?;
    let tol = cfg.f64_or("tolerance.series", DEFAULT_SERIES_TOL)?;
    let residual = cfg.f64_or("tolerance.residual", 1e-12)?;
    let terms = cfg.usize_or("series.max_terms", DEFAULT_MAX_TERMS)?;
    positive(tol, "tolerance.series")?;
    positive(residual, "tolerance.residual")?;
    cfg.set("tolerance.series", tol);
    cfg.set("tolerance.residual", residual);
    cfg.set("series.max_terms", terms as i64);
    Ok(())
}

pub(crate) fn finite(x: f64, key: &str) -> Result<f64, CliError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Usage(format!("`{key}` must be finite, got {x}")))
    }
}

pub(crate) fn positive(x: f64, key: &str) -> Result<f64, CliError> {
    if x > 0.0 && x.is_finite() {
        Ok(x)
    } else {
        Err(CliError::Usage(format!("`{key}` must be positive, got {x}")))
    }
}

pub(super) fn execute(cfg: &Config) -> Result<Report, CliError> {
    let chi = cfg.f64("model.chi")?;
    let eta = cfg.f64("model.eta")?;
    let residual_tol = cfg.f64("tolerance.residual")?;
    let series = ito_exp(
        &interaction_exponent(chi, eta),
        cfg.f64("tolerance.series")?,
        cfg.usize("series.max_terms")?,
    )?;
    let closed = coefficient_functions(chi, eta);
    let coefficient_residual = series.max_distance(&closed);
    let model = derive_master_equation(Coupling::new(chi, eta), &series, &VacuumState)?;
    let gamma = decay_rate(chi, eta);
    let delta = coherence_shift(chi, eta);
    let jump = model.jump.get(GROUND, EXCITED).re;

    let drift = series.drift.get(EXCITED, EXCITED);
    let gain = series.gain.get(EXCITED, GROUND);
    let loss = series.loss.get(GROUND, EXCITED);
    let gauge_e1 = series.gauge.get(GROUND, GROUND);
    let gauge_e2 = series.gauge.get(EXCITED, EXCITED);

    let mut table = CsvTable::new("derive")
        .column("chi", "input")
        .column("eta", "input")
        .column("series.drift.re", "Ito-exponential series, dtau coefficient on |E2><E2|")
        .column("series.drift.im", "Ito-exponential series, dtau coefficient on |E2><E2|")
        .column("series.gain.re", "Ito-exponential series, dB coefficient on R+")
        .column("series.gain.im", "Ito-exponential series, dB coefficient on R+")
        .column("series.loss.re", "Ito-exponential series, dB+ coefficient on R-")
        .column("series.loss.im", "Ito-exponential series, dB+ coefficient on R-")
        .column("series.gauge_e1.re", "Ito-exponential series, dLambda coefficient on |E1><E1|")
        .column("series.gauge_e1.im", "Ito-exponential series, dLambda coefficient on |E1><E1|")
        .column("series.gauge_e2.re", "Ito-exponential series, dLambda coefficient on |E2><E2|")
        .column("series.gauge_e2.im", "Ito-exponential series, dLambda coefficient on |E2><E2|")
        .column("series.coefficient_residual", "max |series - closed-form coefficients|")
        .column("series.gamma", "vacuum average of the series coefficients")
        .column("series.delta", "vacuum average of the series coefficients")
        .column("series.jump", "jump operator scalar L on R-")
        .column("closed.gamma", "closed form 2 chi^2 (1 - cos eta)/eta^2")
        .column("closed.delta", "closed form chi^2 (eta - sin eta)/eta^2")
        .column("closed.level_shift", "closed form -delta")
        .column("closed.suppression", "closed form 2 (1 - cos eta)/eta^2");
    let c = |z: Complex64| [Cell::Float(z.re), Cell::Float(z.im)];
    let mut row = vec![Cell::Float(chi), Cell::Float(eta)];
    for z in [drift, gain, loss, gauge_e1, gauge_e2] {
        row.extend(c(z));
    }
    row.extend(
        [
            coefficient_residual,
            model.gamma,
            model.delta,
            jump,
            gamma,
            delta,
            -delta,
            suppression_factor(eta),
        ]
        .map(Cell::Float),
    );
    table.push_row(row);

    let fmt = |z: Complex64| format!("{:+.12e} {:+.12e}i", z.re, z.im);
    let summary = vec![
        format!("chi = {chi}, eta = {eta}"),
        "coefficient            series value".to_string(),
        format!("drift  (dtau, P)      {}", fmt(drift)),
        format!("gain   (dB, R+)       {}", fmt(gain)),
        format!("loss   (dB+, R-)      {}", fmt(loss)),
        format!("gauge  (dLambda, E1)  {}", fmt(gauge_e1)),
        format!("gauge  (dLambda, E2)  {}", fmt(gauge_e2)),
        format!("series vs closed form max deviation {coefficient_residual:.3e}"),
        format!("gamma = {:.15e}   delta = {:.15e}   L = {:.15e} R-", model.gamma, model.delta, jump),
        format!("suppression S = {:.15e}   level shift = {:.15e}", suppression_factor(eta), -delta),
    ];

    let mut breaches = Vec::new();
    let checks = [
        ("coefficients", coefficient_residual),
        ("gamma", (model.gamma - gamma).abs()),
        ("delta", (model.delta - delta).abs()),
    ];
    for (name, r) in checks {
        if !(r <= residual_tol) {
            breaches.push(format!("{name}: series vs closed form {r:.3e} > {residual_tol:.3e}"));
        }
    }
    Ok(Report {
        table,
        summary,
        breaches,
    })
}
