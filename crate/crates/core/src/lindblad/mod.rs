// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Reduced dynamics of the two-level particle in the photon-free vacuum.
//!
//! [`derive_master_equation`] averages the Ito increment of `ρ` over the
//! vacuum and reads off the decay rate `γ = 2χ²(1 − cos η)/η²`, the coherence
//! shift `δ = χ²(η − sin η)/η²` and the jump operator
//! `L = χ√(1 − cos η)/η · R₋`. Note the `η²` in the rate: it is the only form
//! that reduces to the Stark-free rate `χ²` at η = 0.

mod density;
mod evolution;
mod model;

use thiserror::Error;

pub use density::{DensityMatrix, StateError, EIGENVALUE_FLOOR, HERMITICITY_TOL, TRACE_TOL};
pub use evolution::{closed_form_evolution, numerical_evolution, TRACE_DRIFT_LIMIT};
pub(crate) use model::to_matrix2;
pub use model::{
    coherence_shift, decay_rate, derive_master_equation, suppression_factor, Coupling,
    LindbladModel, VacuumState,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LindbladError {
    #[error("coefficient channel {channel} has the wrong operator pattern: {reason}")]
    Structure { channel: &'static str, reason: String },
    #[error("vacuum average does not have the master-equation normal form (residual {0:e})")]
    NormalFormMismatch(f64),
    #[error("derived decay rate is negative: {0}")]
    NegativeRate(f64),
    #[error("invalid rates gamma={gamma}, delta={delta}")]
    InvalidRates { gamma: f64, delta: f64 },
    #[error("time must be finite and non-negative, got {0}")]
    InvalidTime(f64),
    #[error("step count must be at least 1")]
    InvalidSteps,
    #[error("integration failed at step {step}: {reason}")]
    IntegrationFailure { step: usize, reason: String },
    #[error(transparent)]
    State(#[from] StateError),
}
