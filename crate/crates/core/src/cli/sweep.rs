// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

use rayon::prelude::*;

use super::derive::{finite, positive};
use super::{check_keys, Cell, CliError, CsvTable, Report};
use crate::config::Config;
use crate::ito_algebra::{interaction_exponent, ito_exp, DEFAULT_MAX_TERMS, DEFAULT_SERIES_TOL};
use crate::lindblad::{
    coherence_shift, decay_rate, derive_master_equation, suppression_factor, Coupling, VacuumState,
};

const KEYS: &[&str] = &[
    "model.chi",
    "sweep.eta_min",
    "sweep.eta_max",
    "sweep.points",
    "tolerance.residual",
];

pub(super) fn resolve(cfg: &mut Config) -> Result<(), CliError> {
    check_keys(cfg, "sweep", KEYS, &[])?;
    finite(cfg.f64("model.chi")?, "model.chi")?;
    let lo = finite(cfg.f64("sweep.eta_min")?, "sweep.eta_min")?;
    let hi = finite(cfg.f64("sweep.eta_max")?, "sweep.eta_max")?;
    if hi < lo {
        return Err(CliError::Usage(format!("sweep.eta_max ({hi}) is below sweep.eta_min ({lo})")));
    }
    let points = cfg.usize("sweep.points")?;
    if points == 0 {
        return Err(CliError::Usage("`sweep.points` must be at least 1".into()));
    }
    let tol = positive(cfg.f64_or("tolerance.residual", 1e-12)?, "tolerance.residual")?;
    cfg.set("tolerance.residual", tol);
    Ok(())
}

/// `eta_min + i·(eta_max − eta_min)/(points − 1)`.
pub fn eta_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![lo];
    }
    (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect()
}

struct Row {
    eta: f64,
    gamma: f64,
    delta: f64,
    suppression: f64,
    series_gamma: f64,
    series_delta: f64,
    residual: f64,
}

pub(super) fn execute(cfg: &Config) -> Result<Report, CliError> {
    let chi = cfg.f64("model.chi")?;
    let tol = cfg.f64("tolerance.residual")?;
    let grid = eta_grid(
        cfg.f64("sweep.eta_min")?,
        cfg.f64("sweep.eta_max")?,
        cfg.usize("sweep.points")?,
    );
    // indexed parallel collect keeps grid order
    let rows: Vec<Row> = grid
        .par_iter()
        .map(|&eta| -> Result<Row, CliError> {
            let series = ito_exp(&interaction_exponent(chi, eta), DEFAULT_SERIES_TOL, DEFAULT_MAX_TERMS)?;
            let model = derive_master_equation(Coupling::new(chi, eta), &series, &VacuumState)?;
            let gamma = decay_rate(chi, eta);
            let delta = coherence_shift(chi, eta);
            Ok(Row {
                eta,
                gamma,
                delta,
                suppression: suppression_factor(eta),
                series_gamma: model.gamma,
                series_delta: model.delta,
                residual: (model.gamma - gamma).abs().max((model.delta - delta).abs()),
            })
        })
        .collect::<Result<_, _>>()?;

    let mut table = CsvTable::new("sweep")
        .column("eta", "sweep grid")
        .column("closed.gamma", "closed form 2 chi^2 (1 - cos eta)/eta^2")
        .column("closed.delta", "closed form chi^2 (eta - sin eta)/eta^2")
        .column("closed.suppression", "closed form 2 (1 - cos eta)/eta^2")
        .column("series.gamma", "vacuum average of the Ito-exponential series")
        .column("series.delta", "vacuum average of the Ito-exponential series")
        .column("series.residual", "max of |series - closed| over gamma and delta");
    let mut breaches = Vec::new();
    for r in &rows {
        table.push_row(vec![
            Cell::Float(r.eta),
            r.gamma.into(),
            r.delta.into(),
            r.suppression.into(),
            r.series_gamma.into(),
            r.series_delta.into(),
            r.residual.into(),
        ]);
        if !(r.residual <= tol) {
            breaches.push(format!("eta = {}: series vs closed form {:.3e} > {tol:.3e}", r.eta, r.residual));
        }
    }
    let worst = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    let summary = vec![format!(
        "chi = {chi}, {} eta points, max series residual {worst:.3e}",
        rows.len()
    )];
    Ok(Report {
        table,
        summary,
        breaches,
    })
}
