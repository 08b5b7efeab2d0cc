// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::derive::{finite, positive};
use super::{check_keys, Cell, CliError, CsvTable, Report};
use crate::config::Config;
use crate::physical_params::{
    map_params, Cavity, Level, LevelSystem, Mapping, ResonanceKind, ResonanceSpec, Thresholds,
    DEFAULT_HERMITICITY_TOL, DEFAULT_RESONANCE_GUARD,
};

const KEYS: &[&str] = &[
    "hbar",
    "resonance.kind",
    "resonance.omega21",
    "resonance.omega_r",
    "resonance.coupling",
    "resonance.cavity.omega_c",
    "resonance.cavity.delta_omega_c",
    "resonance.cavity.g",
    "resonance.guard",
    "resonance.max_detuning",
    "resonance.max_cavity_width",
    "resonance.significance_threshold",
    "tolerance.hermiticity",
];

fn bad_key(key: &str, why: &str) -> CliError {
    CliError::Usage(format!("key `{key}`: {why}"))
}

/// Level numbers named by `levels.N.*` keys; must be 1..=n without gaps.
fn level_count(cfg: &Config) -> Result<usize, CliError> {
    let mut seen = Vec::new();
    for key in cfg.keys().filter(|k| k.starts_with("levels.")) {
        let parts: Vec<&str> = key.split('.').collect();
        let n: usize = match parts.as_slice() {
            ["levels", n, "freq" | "label"] => n.parse().map_err(|_| bad_key(key, "level number must be a positive integer"))?,
            _ => return Err(bad_key(key, "expected levels.N.freq or levels.N.label")),
        };
        if n == 0 {
            return Err(bad_key(key, "levels are numbered from 1"));
        }
        seen.push(n);
    }
    seen.sort_unstable();
    seen.dedup();
    let n = seen.len();
    if n < 2 {
        return Err(CliError::Usage("need at least levels.1 and levels.2".into()));
    }
    if seen.last() != Some(&n) {
        return Err(CliError::Usage(format!("level numbers must run 1..={n} without gaps")));
    }
    Ok(n)
}

fn dipole_entries(cfg: &Config, n: usize) -> Result<BTreeMap<(usize, usize), Complex64>, CliError> {
    let mut out: BTreeMap<(usize, usize), Complex64> = BTreeMap::new();
    for key in cfg.keys().filter(|k| k.starts_with("dipole.")) {
        let parts: Vec<&str> = key.split('.').collect();
        let (j, k, part) = match parts.as_slice() {
            ["dipole", j, k, part @ ("re" | "im")] => (
                j.parse::<usize>().map_err(|_| bad_key(key, "level index must be an integer"))?,
                k.parse::<usize>().map_err(|_| bad_key(key, "level index must be an integer"))?,
                *part,
            ),
            _ => return Err(bad_key(key, "expected dipole.J.K.re or dipole.J.K.im")),
        };
        if j == 0 || k == 0 || j > n || k > n {
            return Err(bad_key(key, "level index out of range"));
        }
        let v = finite(cfg.f64(key)?, key)?;
        let z = out.entry((j, k)).or_default();
        if part == "re" {
            z.re = v;
        } else {
            z.im = v;
        }
    }
    Ok(out)
}

pub(super) fn resolve(cfg: &mut Config) -> Result<(), CliError> {
    check_keys(cfg, "map-params", KEYS, &["levels.", "dipole."])?;
    let n = level_count(cfg)?;
    for k in 1..=n {
        finite(cfg.f64(&format!("levels.{k}.freq"))?, "levels.N.freq")?;
        let label = format!("levels.{k}.label");
        if !cfg.contains(&label) {
            cfg.set(&label, format!("E{k}"));
        }
        cfg.str(&label)?;
    }
    for (j, k) in dipole_entries(cfg, n)?.keys().copied().collect::<Vec<_>>() {
        for part in ["re", "im"] {
            let key = format!("dipole.{j}.{k}.{part}");
            if !cfg.contains(&key) {
                cfg.set(&key, 0.0);
            }
        }
    }
    positive(cfg.f64("hbar")?, "hbar")?;
    let kind: ResonanceKind = cfg.str("resonance.kind")?.parse()?;
    if !cfg.contains("resonance.omega21") {
        let w = cfg.f64("levels.2.freq")? - cfg.f64("levels.1.freq")?;
        cfg.set("resonance.omega21", w);
    }
    cfg.f64("resonance.omega_r")?;
    cfg.f64("resonance.coupling")?;
    if kind == ResonanceKind::TwoQuantum {
        cfg.f64("resonance.cavity.omega_c")?;
        cfg.f64("resonance.cavity.delta_omega_c")?;
        cfg.optional_f64("resonance.cavity.g")?;
    }
    let defaults = Thresholds::default();
    let floats = [
        ("resonance.guard", DEFAULT_RESONANCE_GUARD),
        ("resonance.max_detuning", defaults.detuning),
        ("resonance.max_cavity_width", defaults.cavity_width_ratio),
        ("resonance.significance_threshold", defaults.stark_significance),
        ("tolerance.hermiticity", DEFAULT_HERMITICITY_TOL),
    ];
    for (key, default) in floats {
        let v = positive(cfg.f64_or(key, default)?, key)?;
        cfg.set(key, v);
    }
    Ok(())
}

/// Builds the level system and resonance data from a resolved config.
pub fn system_from_config(cfg: &Config) -> Result<(LevelSystem, ResonanceSpec, Thresholds), CliError> {
    let n = level_count(cfg)?;
    let levels = (1..=n)
        .map(|k| {
            Ok(Level {
                label: cfg.str(&format!("levels.{k}.label")).map(str::to_string).unwrap_or(format!("E{k}")),
                freq: cfg.f64(&format!("levels.{k}.freq"))?,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let entries = dipole_entries(cfg, n)?;
    let mut d = DMatrix::<Complex64>::zeros(n, n);
    for (&(j, k), &z) in &entries {
        d[(j - 1, k - 1)] = z;
        if !entries.contains_key(&(k, j)) {
            d[(k - 1, j - 1)] = z.conj();
        }
    }
    let system = LevelSystem::with_tolerance(levels, d, cfg.f64("hbar")?, cfg.f64("tolerance.hermiticity")?)?
        .with_resonance_guard(cfg.f64("resonance.guard")?);
    let kind: ResonanceKind = cfg.str("resonance.kind")?.parse()?;
    let cavity = if kind == ResonanceKind::TwoQuantum {
        Some(Cavity {
            omega_c: cfg.f64("resonance.cavity.omega_c")?,
            delta_omega_c: cfg.f64("resonance.cavity.delta_omega_c")?,
            g: cfg.optional_f64("resonance.cavity.g")?,
        })
    } else {
        None
    };
    let spec = ResonanceSpec {
        kind,
        omega21: cfg.f64("resonance.omega21")?,
        omega_r: cfg.f64("resonance.omega_r")?,
        coupling: cfg.f64("resonance.coupling")?,
        cavity,
    };
    let thresholds = Thresholds {
        detuning: cfg.f64("resonance.max_detuning")?,
        cavity_width_ratio: cfg.f64("resonance.max_cavity_width")?,
        stark_significance: cfg.f64("resonance.significance_threshold")?,
    };
    Ok((system, spec, thresholds))
}

pub(super) fn execute(cfg: &Config) -> Result<Report, CliError> {
    let (system, spec, thresholds) = system_from_config(cfg)?;
    let mapping = map_params(&spec, &system, &thresholds)?;
    let mut summary = vec![format!(
        "{} resonance: chi = {:.15e}, eta = {:.15e}",
        spec.kind.as_str(),
        mapping.chi(),
        mapping.eta()
    )];
    let table = match mapping {
        Mapping::OneQuantum(m) => {
            summary.push(format!(
                "significance {:.6e} ({})",
                m.significance,
                if m.stark_significant { "Stark channel essential" } else { "below threshold" }
            ));
            let mut t = CsvTable::new("map-params")
                .column("chi", "Gamma |d12| / hbar")
                .column("eta", "chi^2 (Pi_2 - Pi_1)(omega21) / (2 |d12|^2 / (hbar omega21))")
                .column("significance", "|Pi_2 - Pi_1| / (2 |d12|^2 / (hbar omega21))")
                .column("stark_significant", "significance above the configured threshold (0/1)");
            t.push_row(vec![
                Cell::Float(m.chi),
                m.eta.into(),
                m.significance.into(),
                m.stark_significant.into(),
            ]);
            t
        }
        Mapping::TwoQuantum(m) => {
            summary.push(format!(
                "|Pi_21| = {:.6e}, Pi(omega_r, omega_r) = {:.6e}, eta/chi = {:.6e}",
                m.pi_21, m.stark_sum, m.eta_over_chi
            ));
            let mut t = CsvTable::new("map-params")
                .column("chi", "g Gamma |Pi_21(omega_r)| / hbar")
                .column("eta", "chi Pi(omega_r, omega_r) omega_r / (|Pi_21| delta_omega_c)")
                .column("pi_21", "|Pi_21(omega_r)|")
                .column("stark_sum", "Pi_2(omega_r) - Pi_1(omega_r)")
                .column("eta_over_chi", "eta / chi")
                .column("eta_order_unity", "|eta| >= 1 (0/1)");
            t.push_row(vec![
                Cell::Float(m.chi),
                m.eta.into(),
                m.pi_21.into(),
                m.stark_sum.into(),
                m.eta_over_chi.into(),
                m.eta_order_unity.into(),
            ]);
            t
        }
    };
    Ok(Report {
        table,
        summary,
        breaches: Vec::new(),
    })
}
