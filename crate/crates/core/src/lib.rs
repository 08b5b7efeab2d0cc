// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Quantum Ito calculus for a two-level emitter with a Stark coupling to the
//! vacuum field, plus oracles that check the derived master equation.

// `!(x <= tol)` is used on purpose so that NaN counts as a breach
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod ito_algebra;
pub mod lindblad;
pub mod collision_oracle;
pub mod physical_params;
pub mod config;
pub mod cli;
