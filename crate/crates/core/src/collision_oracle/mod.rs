// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Brute-force checks of the master equation.
//!
//! The collision model couples the emitter to a fresh vacuum ancilla mode in
//! every slice of length `dtau`, with `dB → √dtau·a`, `dB† → √dtau·a†` and
//! `dΛ → a†a`, then traces the ancilla out. Its trajectory converges to the
//! closed-form solution at first order in `dtau`. [`mc_unravel`] is an
//! independent second route through quantum-jump trajectories.

mod mc;
mod run;
mod unitary;

use thiserror::Error;

use crate::lindblad::{LindbladError, StateError};

pub use mc::{mc_unravel, trajectory_rng, McOutcome, MAX_JUMP_PROBABILITY};
pub use run::{
    convergence_study, fit_order, run_collisions, ConvergenceRow, ConvergenceTable, OrderFit,
    EXACT_THRESHOLD, POSITIVITY_FLOOR, TRACE_DRIFT_LIMIT,
};
pub use unitary::{ancilla_annihilation, collision_hamiltonian, step_unitary, JointState};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CollisionError {
    #[error("invalid collision configuration: {0}")]
    InvalidConfig(String),
    #[error("collision simulation failed at slice {slice}: {reason}")]
    SimulationFailure { slice: usize, reason: String },
    #[error("jump probability {p_jump} at slice {slice} exceeds the per-slice cap; use a smaller dtau")]
    StepTooLarge { slice: usize, p_jump: f64 },
    #[error(transparent)]
    Model(#[from] LindbladError),
    #[error(transparent)]
    State(#[from] StateError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollisionConfig {
    pub chi: f64,
    pub eta: f64,
    /// slice length
    pub dtau: f64,
    pub n_slices: usize,
    /// highest ancilla Fock level kept; 1 is a two-level ancilla
    pub fock_cutoff: usize,
    /// only used by Monte Carlo runs
    pub rng_seed: u64,
}

impl CollisionConfig {
    /// Config with `fock_cutoff = 1` and seed 0.
    pub fn new(chi: f64, eta: f64, dtau: f64, n_slices: usize) -> Result<Self, CollisionError> {
        let cfg = Self {
            chi,
            eta,
            dtau,
            n_slices,
            fock_cutoff: 1,
            rng_seed: 0,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_fock_cutoff(mut self, fock_cutoff: usize) -> Self {
        self.fock_cutoff = fock_cutoff;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rng_seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), CollisionError> {
        if !self.chi.is_finite() || !self.eta.is_finite() {
            return Err(CollisionError::InvalidConfig("chi and eta must be finite".into()));
        }
        if !(self.dtau > 0.0) || !self.dtau.is_finite() {
            return Err(CollisionError::InvalidConfig(format!(
                "dtau must be positive, got {}",
                self.dtau
            )));
        }
        if self.n_slices == 0 {
            return Err(CollisionError::InvalidConfig("n_slices must be at least 1".into()));
        }
        if self.fock_cutoff == 0 {
            return Err(CollisionError::InvalidConfig("fock_cutoff must be at least 1".into()));
        }
        Ok(())
    }

    /// `dtau · n_slices`.
    pub fn total_time(&self) -> f64 {
        self.dtau * self.n_slices as f64
    }
}
