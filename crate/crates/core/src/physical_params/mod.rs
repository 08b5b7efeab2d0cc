// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Dimensionless couplings `(χ, η)` from emitter data.
//!
//! Frequencies are angular and dipoles are in whatever units make
//! `|d|²/ħ` a frequency·(coupling)⁻² consistent with `Γ`; only the
//! dimensionless outputs leave this module.

mod levels;
mod mapping;

use thiserror::Error;

pub use levels::{Level, LevelSystem, DEFAULT_HERMITICITY_TOL, DEFAULT_RESONANCE_GUARD};
pub use mapping::{
    map_one_quantum, map_params, map_two_quantum, Cavity, Mapping, OneQuantumMapping,
    ResonanceKind, ResonanceSpec, Thresholds, TwoQuantumMapping,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParamError {
    #[error("invalid level system: {0}")]
    InvalidSystem(String),
    #[error("level {0} does not exist")]
    UnknownLevel(usize),
    #[error("near-resonant denominator {denominator:e} for levels {k} and {j}; perturbative sums are invalid here")]
    NearResonance { k: usize, j: usize, denominator: f64 },
    #[error("invalid resonance: {0}")]
    InvalidResonance(String),
    #[error("field is off resonance: relative detuning {detuning} exceeds {limit}")]
    OffResonance { detuning: f64, limit: f64 },
    #[error("cavity too broad: delta_omega_c/omega_r = {ratio} exceeds {limit}")]
    BroadCavity { ratio: f64, limit: f64 },
    #[error("forbidden transition: d12 = 0, the one-quantum channel is absent")]
    ForbiddenTransition,
    #[error("vanishing two-photon matrix element Pi_21(omega_r)")]
    VanishingTwoPhoton,
}
