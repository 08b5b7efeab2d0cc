// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::Matrix2;
use num_complex::Complex64;

use super::{DensityMatrix, LindbladError, LindbladModel, EIGENVALUE_FLOOR};

/// Trace drift that aborts [`numerical_evolution`].
pub const TRACE_DRIFT_LIMIT: f64 = 1e-8;

/// Exact solution of the master equation at time `tau`:
/// `ρ₂₂ = ρ₂₂(0)e^{−γτ}`, `ρ₂₁ = ρ₂₁(0)e^{−γτ/2 + iδτ}`.
pub fn closed_form_evolution(
    model: &LindbladModel,
    rho0: &DensityMatrix,
    tau: f64,
) -> Result<DensityMatrix, LindbladError> {
    if !(tau >= 0.0) || !tau.is_finite() {
        return Err(LindbladError::InvalidTime(tau));
    }
    let rho22 = rho0.rho22() * (-model.gamma * tau).exp();
    let rho21 = rho0.rho21() * Complex64::new(-0.5 * model.gamma * tau, model.delta * tau).exp();
    Ok(DensityMatrix::from_parts(rho22, rho21)?)
}

/// Fixed-step RK4 on the master equation. Returns `steps + 1` states
/// (initial state included), or just `[rho0]` when `tau_end == 0`.
pub fn numerical_evolution(
    model: &LindbladModel,
    rho0: &DensityMatrix,
    tau_end: f64,
    steps: usize,
) -> Result<Vec<DensityMatrix>, LindbladError> {
    if !(tau_end >= 0.0) || !tau_end.is_finite() {
        return Err(LindbladError::InvalidTime(tau_end));
    }
    if steps == 0 {
        return Err(LindbladError::InvalidSteps);
    }
    if tau_end == 0.0 {
        return Ok(vec![*rho0]);
    }
    let h = tau_end / steps as f64;
    let half = Complex64::new(0.5 * h, 0.0);
    let full = Complex64::new(h, 0.0);
    let sixth = Complex64::new(h / 6.0, 0.0);
    let two = Complex64::new(2.0, 0.0);

    let mut out = Vec::with_capacity(steps + 1);
    out.push(*rho0);
    let mut rho: Matrix2<Complex64> = *rho0.matrix();
    for step in 1..=steps {
        let k1 = model.rhs(&rho);
        let k2 = model.rhs(&(rho + k1 * half));
        let k3 = model.rhs(&(rho + k2 * half));
        let k4 = model.rhs(&(rho + k3 * full));
        rho += (k1 + k2 * two + k3 * two + k4) * sixth;

        let state = DensityMatrix::from_unchecked(rho);
        let drift = (state.trace() - 1.0).abs();
        if !(drift <= TRACE_DRIFT_LIMIT) {
            return Err(LindbladError::IntegrationFailure {
                step,
                reason: format!("trace drift {drift:e}"),
            });
        }
        let (lo, _) = state.eigenvalues();
        if lo < EIGENVALUE_FLOOR {
            return Err(LindbladError::IntegrationFailure {
                step,
                reason: format!("negative eigenvalue {lo:e}"),
            });
        }
        out.push(state);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::{LN_2, PI};

    use super::*;

    #[test]
    fn half_life() {
        let m = LindbladModel::from_rates(1.0, 0.0).unwrap();
        let rho = closed_form_evolution(&m, &DensityMatrix::excited(), LN_2).unwrap();
        assert!((rho.rho22() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn frozen_excited_state() {
        let m = LindbladModel::from_coupling(1.0, 2.0 * PI).unwrap();
        for tau in [0.0, 1.0, 37.5, 100.0] {
            let rho = closed_form_evolution(&m, &DensityMatrix::excited(), tau).unwrap();
            assert!((rho.rho22() - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn coherence_phase_and_decay() {
        let m = LindbladModel::from_rates(0.7, 0.3).unwrap();
        let rho0 = DensityMatrix::from_parts(0.5, Complex64::new(0.5, 0.0)).unwrap();
        let rho = closed_form_evolution(&m, &rho0, 1.0).unwrap();
        assert!((rho.rho21().norm() - 0.5 * (-0.35f64).exp()).abs() < 1e-15);
        assert!((rho.rho21().arg() - 0.3).abs() < 1e-15);
        let rk = numerical_evolution(&m, &rho0, 1.0, 1000).unwrap();
        assert!((rk.last().unwrap().rho21() - rho.rho21()).norm() < 1e-12);
    }

    #[test]
    fn negative_time_is_rejected() {
        let m = LindbladModel::from_rates(1.0, 0.0).unwrap();
        let rho0 = DensityMatrix::excited();
        assert!(matches!(
            closed_form_evolution(&m, &rho0, -1.0),
            Err(LindbladError::InvalidTime(_))
        ));
        assert!(numerical_evolution(&m, &rho0, -1.0, 10).is_err());
        assert!(matches!(
            numerical_evolution(&m, &rho0, 1.0, 0),
            Err(LindbladError::InvalidSteps)
        ));
    }

    #[test]
    fn rk4_exponential_decay() {
        let m = LindbladModel::from_rates(1.0, 0.0).unwrap();
        let out = numerical_evolution(&m, &DensityMatrix::excited(), 1.0, 1000).unwrap();
        assert_eq!(out.len(), 1001);
        assert!((out[1000].rho22() - (-1.0f64).exp()).abs() < 1e-9);
    }

    #[test]
    fn zero_duration_returns_initial_state() {
        let m = LindbladModel::from_rates(1.0, 0.0).unwrap();
        let out = numerical_evolution(&m, &DensityMatrix::excited(), 0.0, 10).unwrap();
        assert_eq!(out, vec![DensityMatrix::excited()]);
    }

    #[test]
    fn rk4_half_turn_matches_closed_form() {
        let m = LindbladModel::from_coupling(1.0, PI).unwrap();
        assert!((m.gamma - 4.0 / (PI * PI)).abs() < 1e-15);
        assert!((m.delta - 1.0 / PI).abs() < 1e-15);
        let out = numerical_evolution(&m, &DensityMatrix::excited(), 1.0, 1000).unwrap();
        let exact = closed_form_evolution(&m, &DensityMatrix::excited(), 1.0).unwrap();
        assert!((out[1000].rho22() - exact.rho22()).abs() < 1e-9);
    }

    #[test]
    fn overshooting_step_is_reported() {
        // γh = 10 drives RK4 far outside the stability region
        let m = LindbladModel::from_rates(100.0, 0.0).unwrap();
        match numerical_evolution(&m, &DensityMatrix::excited(), 1.0, 10) {
            Err(LindbladError::IntegrationFailure { step, .. }) => assert_eq!(step, 1),
            other => panic!("expected failure, got {other:?}"),
        }
    }
}
