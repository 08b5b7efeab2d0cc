// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

use num_complex::Complex64;

use super::derive::{finite, positive};
use super::{check_keys, Cell, CliError, CsvTable, Report};
use crate::collision_oracle::{mc_unravel, run_collisions, CollisionConfig};
use crate::config::Config;
use crate::lindblad::{closed_form_evolution, numerical_evolution, DensityMatrix, LindbladModel};

const KEYS: &[&str] = &[
    "model.chi",
    "model.eta",
    "initial.rho22",
    "initial.rho21.re",
    "initial.rho21.im",
    "time.end",
    "time.steps",
    "rk4.substeps",
    "collision.enabled",
    "collision.refine",
    "collision.fock_cutoff",
    "mc.enabled",
    "mc.trajectories",
    "mc.refine",
    "tolerance.rk4",
    "tolerance.collision",
    "tolerance.mc_sigmas",
];

pub(super) fn resolve(cfg: &mut Config) -> Result<(), CliError> {
    check_keys(cfg, "simulate", KEYS, &[])?;
    finite(cfg.f64("model.chi")?, "model.chi")?;
    finite(cfg.f64("model.eta")?, "model.eta")?;
    positive(cfg.f64("time.end")?, "time.end")?;
    let floats = [
        ("initial.rho22", 1.0),
        ("initial.rho21.re", 0.0),
        ("initial.rho21.im", 0.0),
        ("tolerance.rk4", 1e-9),
        ("tolerance.collision", 1e-2),
        ("tolerance.mc_sigmas", 5.0),
    ];
    for (key, default) in floats {
        let v = finite(cfg.f64_or(key, default)?, key)?;
        cfg.set(key, v);
    }
    for key in ["tolerance.rk4", "tolerance.collision", "tolerance.mc_sigmas"] {
        positive(cfg.f64(key)?, key)?;
    }
    let counts = [
        ("time.steps", 100),
        ("rk4.substeps", 10),
        ("collision.refine", 10),
        ("collision.fock_cutoff", 1),
        ("mc.trajectories", 1000),
        ("mc.refine", 10),
    ];
    for (key, default) in counts {
        let v = cfg.usize_or(key, default)?;
        if v == 0 {
            return Err(CliError::Usage(format!("`{key}` must be at least 1")));
        }
        cfg.set(key, v as i64);
    }
    let enabled = cfg.bool_or("collision.enabled", true)?;
    cfg.set("collision.enabled", enabled);
    let mc = cfg.bool_or("mc.enabled", false)?;
    cfg.set("mc.enabled", mc);
    Ok(())
}

fn state_cells(state: &DensityMatrix) -> [Cell; 4] {
    [
        state.rho11().into(),
        state.rho22().into(),
        state.rho21().re.into(),
        state.rho21().im.into(),
    ]
}

fn add_state_columns(table: CsvTable, prefix: &str, provenance: &str) -> CsvTable {
    ["rho11", "rho22", "rho21.re", "rho21.im"]
        .iter()
        .fold(table, |t, name| t.column(&format!("{prefix}.{name}"), provenance))
}

pub(super) fn execute(cfg: &Config) -> Result<Report, CliError> {
    let chi = cfg.f64("model.chi")?;
    let eta = cfg.f64("model.eta")?;
    let tau_end = cfg.f64("time.end")?;
    let steps = cfg.usize("time.steps")?;
    let rho0 = DensityMatrix::from_parts(
        cfg.f64("initial.rho22")?,
        Complex64::new(cfg.f64("initial.rho21.re")?, cfg.f64("initial.rho21.im")?),
    )?;
    let model = LindbladModel::from_coupling(chi, eta)?;
    let grid: Vec<f64> = (0..=steps).map(|i| tau_end * i as f64 / steps as f64).collect();

    let closed = grid
        .iter()
        .map(|&tau| closed_form_evolution(&model, &rho0, tau))
        .collect::<Result<Vec<_>, _>>()?;

    let substeps = cfg.usize("rk4.substeps")?;
    let rk4: Vec<DensityMatrix> = numerical_evolution(&model, &rho0, tau_end, steps * substeps)?
        .into_iter()
        .step_by(substeps)
        .collect();

    let collision = if cfg.bool("collision.enabled")? {
        let refine = cfg.usize("collision.refine")?;
        let n = steps * refine;
        let cc = CollisionConfig::new(chi, eta, tau_end / n as f64, n)?
            .with_fock_cutoff(cfg.usize("collision.fock_cutoff")?);
        let series: Vec<DensityMatrix> = run_collisions(&cc, &rho0)?.into_iter().step_by(refine).collect();
        Some((series, cc.dtau))
    } else {
        None
    };

    let mc = if cfg.bool("mc.enabled")? {
        let refine = cfg.usize("mc.refine")?;
        let n = steps * refine;
        let out = mc_unravel(
            &model,
            &rho0,
            cfg.usize("mc.trajectories")?,
            tau_end / n as f64,
            n,
            cfg.u64("rng.seed")?,
        )?;
        let states: Vec<DensityMatrix> = out.average.iter().copied().step_by(refine).collect();
        let errors: Vec<f64> = out.rho22_std_error.iter().copied().step_by(refine).collect();
        Some((states, errors, out.total_jumps()))
    } else {
        None
    };

    let mut table = CsvTable::new("simulate").column("tau", "time grid");
    table = add_state_columns(table, "closed", "closed-form solution of the master equation");
    table = add_state_columns(table, "rk4", "fixed-step RK4 on the master equation");
    if collision.is_some() {
        table = add_state_columns(table, "collision", "repeated-interaction collision model");
    }
    if mc.is_some() {
        table = add_state_columns(table, "mc", "quantum-jump trajectory average");
        table = table.column("mc.rho22_stderr", "standard error of mc.rho22");
    }

    let mut rk4_residual: f64 = 0.0;
    let mut collision_residual: f64 = 0.0;
    let mut mc_excess: f64 = 0.0;
    let mut mc_worst = (0.0, 0.0);
    let sigmas = cfg.f64("tolerance.mc_sigmas")?;
    for (i, &tau) in grid.iter().enumerate() {
        let mut row = vec![Cell::Float(tau)];
        row.extend(state_cells(&closed[i]));
        row.extend(state_cells(&rk4[i]));
        rk4_residual = rk4_residual.max(rk4[i].max_distance(&closed[i]));
        if let Some((series, _)) = &collision {
            row.extend(state_cells(&series[i]));
            collision_residual = collision_residual.max(series[i].max_distance(&closed[i]));
        }
        if let Some((states, errors, _)) = &mc {
            row.extend(state_cells(&states[i]));
            row.push(errors[i].into());
            let deviation = (states[i].rho22() - closed[i].rho22()).abs();
            let excess = deviation - sigmas * errors[i] - 1e-12;
            if excess > mc_excess {
                mc_excess = excess;
                mc_worst = (deviation, errors[i]);
            }
        }
        table.push_row(row);
    }

    let mut summary = vec![
        format!("chi = {chi}, eta = {eta}, gamma = {:.15e}, delta = {:.15e}", model.gamma, model.delta),
        format!("rk4 max deviation from closed form {rk4_residual:.3e}"),
    ];
    let mut breaches = Vec::new();
    let rk4_tol = cfg.f64("tolerance.rk4")?;
    if !(rk4_residual <= rk4_tol) {
        breaches.push(format!("rk4 vs closed form {rk4_residual:.3e} > {rk4_tol:.3e}"));
    }
    if let Some((_, dtau)) = &collision {
        summary.push(format!(
            "collision max deviation from closed form {collision_residual:.3e} (dtau = {dtau:e})"
        ));
        let tol = cfg.f64("tolerance.collision")?;
        if !(collision_residual <= tol) {
            breaches.push(format!("collision vs closed form {collision_residual:.3e} > {tol:.3e}"));
        }
    }
    if let Some((_, _, jumps)) = &mc {
        summary.push(format!("mc total jumps {jumps}"));
        if mc_excess > 0.0 {
            breaches.push(format!(
                "mc rho22 deviation {:.3e} exceeds {sigmas} standard errors ({:.3e})",
                mc_worst.0, mc_worst.1
            ));
        }
    }
    Ok(Report {
        table,
        summary,
        breaches,
    })
}
