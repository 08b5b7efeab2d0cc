// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Quantum-jump unraveling of the master equation.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::CollisionError;
use crate::lindblad::{DensityMatrix, LindbladModel};

/// Per-slice jump probability above which the run is rejected.
pub const MAX_JUMP_PROBABILITY: f64 = 0.1;

/// Trajectories per work unit; fixed so the reduction order never depends on
/// the thread pool.
const CHUNK: usize = 128;

/// Random stream for one trajectory: ChaCha8 keyed by `seed`, stream `index`.
pub fn trajectory_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, PartialEq)]
pub struct McOutcome {
    /// trajectory-averaged state after each slice, `n_slices + 1` entries
    pub average: Vec<DensityMatrix>,
    /// standard error of the mean of `ρ₂₂` at each slice
    pub rho22_std_error: Vec<f64>,
    /// number of jumps in each trajectory
    pub jumps: Vec<u32>,
}

impl McOutcome {
    pub fn total_jumps(&self) -> u64 {
        self.jumps.iter().map(|&j| j as u64).sum()
    }
}

struct Accumulator {
    states: Vec<Matrix2<Complex64>>,
    rho22_sq: Vec<f64>,
    jumps: Vec<u32>,
}

/// Averages `n_traj` jump trajectories started from the pure state `rho0`.
///
/// Between jumps the state evolves with `exp(−i H_eff dτ)`, where
/// `H_eff = δR₊R₋ − (i/2)C†C` and `C = √2·L`; a jump applies `C`. The jump
/// probability of a slice is the norm lost by the no-jump propagator.
pub fn mc_unravel(
    model: &LindbladModel,
    rho0: &DensityMatrix,
    n_traj: usize,
    dtau: f64,
    n_slices: usize,
    seed: u64,
) -> Result<McOutcome, CollisionError> {
    if n_traj == 0 {
        return Err(CollisionError::InvalidConfig("n_traj must be at least 1".into()));
    }
    if !(dtau > 0.0) || !dtau.is_finite() {
        return Err(CollisionError::InvalidConfig(format!("dtau must be positive, got {dtau}")));
    }
    let psi0 = rho0.pure_amplitudes()?;
    let psi0 = Vector2::new(psi0[0], psi0[1]);

    let collapse = crate::lindblad::to_matrix2(&model.collapse_operator());
    let h_eff = crate::lindblad::to_matrix2(&model.shift_hamiltonian())
        - collapse.adjoint() * collapse * Complex64::new(0.0, 0.5);
    let no_jump = (h_eff * Complex64::new(0.0, -dtau)).exp();

    let chunks: Vec<Accumulator> = (0..n_traj.div_ceil(CHUNK))
        .into_par_iter()
        .map(|chunk| {
            let mut acc = Accumulator {
                states: vec![Matrix2::zeros(); n_slices + 1],
                rho22_sq: vec![0.0; n_slices + 1],
                jumps: Vec::with_capacity(CHUNK),
            };
            let first = chunk * CHUNK;
            let last = (first + CHUNK).min(n_traj);
            for traj in first..last {
                let mut rng = trajectory_rng(seed, traj as u64);
                let mut psi = psi0;
                let mut jumps = 0u32;
                record(&mut acc, 0, &psi);
                for slice in 1..=n_slices {
                    let candidate = no_jump * psi;
                    let p_jump = (1.0 - candidate.norm_squared()).max(0.0);
                    if p_jump > MAX_JUMP_PROBABILITY {
                        return Err(CollisionError::StepTooLarge { slice, p_jump });
                    }
                    let r: f64 = rng.random();
                    if r < p_jump {
                        let jumped = collapse * psi;
                        psi = jumped / Complex64::new(jumped.norm(), 0.0);
                        jumps += 1;
                    } else {
                        psi = candidate / Complex64::new(candidate.norm(), 0.0);
                    }
                    record(&mut acc, slice, &psi);
                }
                acc.jumps.push(jumps);
            }
            Ok(acc)
        })
        .collect::<Result<_, _>>()?;

    let mut states = vec![Matrix2::<Complex64>::zeros(); n_slices + 1];
    let mut rho22_sq = vec![0.0; n_slices + 1];
    let mut jumps = Vec::with_capacity(n_traj);
    for acc in chunks {
        for (total, part) in states.iter_mut().zip(&acc.states) {
            *total += part;
        }
        for (total, part) in rho22_sq.iter_mut().zip(&acc.rho22_sq) {
            *total += part;
        }
        jumps.extend(acc.jumps);
    }

    let n = n_traj as f64;
    let mut average = Vec::with_capacity(n_slices + 1);
    let mut rho22_std_error = Vec::with_capacity(n_slices + 1);
    for (sum, sq) in states.iter().zip(&rho22_sq) {
        let mean = sum / Complex64::new(n, 0.0);
        let state = DensityMatrix::new((mean + mean.adjoint()) * Complex64::new(0.5, 0.0))?;
        let m = state.rho22();
        let var = if n_traj > 1 {
            ((sq / n - m * m) * n / (n - 1.0)).max(0.0)
        } else {
            0.0
        };
        rho22_std_error.push((var / n).sqrt());
        average.push(state);
    }
    Ok(McOutcome {
        average,
        rho22_std_error,
        jumps,
    })
}

fn record(acc: &mut Accumulator, slice: usize, psi: &Vector2<Complex64>) {
    acc.states[slice] += psi * psi.adjoint();
    let p = psi[1].norm_sqr();
    acc.rho22_sq[slice] += p * p;
}
