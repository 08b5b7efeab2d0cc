// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Quantum-jump trajectories against the closed-form decay.

use std::f64::consts::PI;

use stark_qsde::collision_oracle::mc_unravel;
use stark_qsde::lindblad::{closed_form_evolution, DensityMatrix, LindbladModel};

fn main() {
    let rho0 = DensityMatrix::excited();
    let seed = 2026;

    let model = LindbladModel::from_rates(1.0, 0.0).expect("rates");
    let out = mc_unravel(&model, &rho0, 10_000, 1e-3, 1000, seed).expect("mc");
    let exact = closed_form_evolution(&model, &rho0, 1.0).expect("closed form").rho22();
    let mean = out.average[1000].rho22();
    let sigma = out.rho22_std_error[1000];
    println!("gamma = 1: rho22(1) = {mean:.5} ± {sigma:.1e}, exact {exact:.5}");
    println!("deviation {:.2} standard errors", (mean - exact) / sigma);

    let frozen = LindbladModel::from_coupling(1.0, 2.0 * PI).expect("model");
    let out = mc_unravel(&frozen, &rho0, 1000, 1e-2, 100, seed).expect("mc");
    println!("eta = 2π: {} jumps over 1000 trajectories", out.total_jumps());
}
