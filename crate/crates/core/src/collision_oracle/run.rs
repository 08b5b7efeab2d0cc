// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

use super::{step_unitary, CollisionConfig, CollisionError, JointState};
use crate::lindblad::{closed_form_evolution, DensityMatrix, LindbladModel};

/// Trace drift that aborts [`run_collisions`].
pub const TRACE_DRIFT_LIMIT: f64 = 1e-8;
/// Eigenvalue floor for the reduced state after each collision.
pub const POSITIVITY_FLOOR: f64 = -1e-10;

/// Repeated interaction with fresh vacuum ancillas. Returns `n_slices + 1`
/// reduced states, starting with `rho0`.
pub fn run_collisions(
    cfg: &CollisionConfig,
    rho0: &DensityMatrix,
) -> Result<Vec<DensityMatrix>, CollisionError> {
    let u = step_unitary(cfg)?;
    let mut out = Vec::with_capacity(cfg.n_slices + 1);
    out.push(*rho0);
    let mut rho = *rho0;
    for slice in 1..=cfg.n_slices {
        let joint = JointState::embed(&rho, cfg.fock_cutoff).evolve(&u);
        let reduced = DensityMatrix::from_unchecked(joint.partial_trace());
        let drift = (reduced.trace() - 1.0).abs();
        if !(drift <= TRACE_DRIFT_LIMIT) {
            return Err(CollisionError::SimulationFailure {
                slice,
                reason: format!("trace drift {drift:e}"),
            });
        }
        let (lo, _) = reduced.eigenvalues();
        if lo < POSITIVITY_FLOOR {
            return Err(CollisionError::SimulationFailure {
                slice,
                reason: format!("negative eigenvalue {lo:e}"),
            });
        }
        rho = reduced;
        out.push(rho);
    }
    Ok(out)
}

/// Errors below this are treated as exact agreement.
pub const EXACT_THRESHOLD: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub dtau: f64,
    pub n_slices: usize,
    /// max over slices of `|ρ₂₂ − ρ₂₂_closed|`
    pub population_error: f64,
    /// max over slices of `|arg(ρ₂₁ / ρ₂₁_closed)|`
    pub phase_error: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrderFit {
    /// every error below [`EXACT_THRESHOLD`]
    Exact,
    /// least-squares slope of `ln error` against `ln dtau`
    Fitted(f64),
    /// some but not all errors vanish
    Undetermined,
}

impl OrderFit {
    /// Exact agreement, or a fitted order inside `[lo, hi]`.
    pub fn within(&self, lo: f64, hi: f64) -> bool {
        match *self {
            OrderFit::Exact => true,
            OrderFit::Fitted(p) => p >= lo && p <= hi,
            OrderFit::Undetermined => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    pub population_order: OrderFit,
    pub phase_order: OrderFit,
    /// `false` flags an error sequence that fails to shrink at some halving
    pub monotone: bool,
}

impl ConvergenceTable {
    /// Largest `error / dtau` over all rows and both observables.
    pub fn error_constant(&self) -> f64 {
        self.rows
            .iter()
            .map(|r| r.population_error.max(r.phase_error) / r.dtau)
            .fold(0.0, f64::max)
    }
}

/// Runs the collision model at `dtau, dtau/2, …, dtau/2^halvings` over the
/// fixed horizon `dtau·n_slices` and compares each run with the closed form.
pub fn convergence_study(
    cfg_base: &CollisionConfig,
    rho0: &DensityMatrix,
    halvings: usize,
) -> Result<ConvergenceTable, CollisionError> {
    if halvings < 2 {
        return Err(CollisionError::InvalidConfig(format!(
            "convergence study needs at least 2 halvings, got {halvings}"
        )));
    }
    cfg_base.validate()?;
    let model = LindbladModel::from_coupling(cfg_base.chi, cfg_base.eta)?;
    let mut rows = Vec::with_capacity(halvings + 1);
    for level in 0..=halvings {
        let factor = 1usize << level;
        let cfg = CollisionConfig {
            dtau: cfg_base.dtau / factor as f64,
            n_slices: cfg_base.n_slices * factor,
            ..*cfg_base
        };
        let series = run_collisions(&cfg, rho0)?;
        let mut population_error: f64 = 0.0;
        let mut phase_error: f64 = 0.0;
        for (slice, state) in series.iter().enumerate() {
            let exact = closed_form_evolution(&model, rho0, slice as f64 * cfg.dtau)?;
            population_error = population_error.max((state.rho22() - exact.rho22()).abs());
            if exact.rho21().norm() > 0.0 && state.rho21().norm() > 0.0 {
                let ratio = state.rho21() * exact.rho21().conj();
                phase_error = phase_error.max(ratio.arg().abs());
            }
        }
        rows.push(ConvergenceRow {
            dtau: cfg.dtau,
            n_slices: cfg.n_slices,
            population_error,
            phase_error,
        });
    }
    let pops: Vec<f64> = rows.iter().map(|r| r.population_error).collect();
    let phases: Vec<f64> = rows.iter().map(|r| r.phase_error).collect();
    let dtaus: Vec<f64> = rows.iter().map(|r| r.dtau).collect();
    let monotone = is_shrinking(&pops) && is_shrinking(&phases);
    Ok(ConvergenceTable {
        population_order: fit_order(&dtaus, &pops),
        phase_order: fit_order(&dtaus, &phases),
        rows,
        monotone,
    })
}

fn is_shrinking(errors: &[f64]) -> bool {
    if errors.iter().all(|&e| e <= EXACT_THRESHOLD) {
        return true;
    }
    errors.windows(2).all(|w| w[1] < w[0])
}

/// Least-squares slope of `ln error` against `ln step`.
pub fn fit_order(steps: &[f64], errors: &[f64]) -> OrderFit {
    if errors.iter().all(|&e| e <= EXACT_THRESHOLD) {
        return OrderFit::Exact;
    }
    if errors.iter().any(|&e| e <= EXACT_THRESHOLD) || steps.len() < 2 {
        return OrderFit::Undetermined;
    }
    let xs: Vec<f64> = steps.iter().map(|s| s.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    OrderFit::Fitted(sxy / sxx)
}
