// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Repeated interactions with fresh vacuum ancillas converge to the master
//! equation at first order in the slice length.

use std::f64::consts::PI;

use num_complex::Complex64;
use stark_qsde::collision_oracle::{convergence_study, CollisionConfig};
use stark_qsde::lindblad::DensityMatrix;

fn main() {
    let rho0 = DensityMatrix::pure(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).expect("pure state");
    for eta in [0.0, PI / 2.0, PI] {
        let base = CollisionConfig::new(1.0, eta, 1e-2, 100).expect("config");
        let table = convergence_study(&base, &rho0, 4).expect("study");
        println!("eta = {eta:.4}");
        println!("{:>10} {:>8} {:>14} {:>14}", "dtau", "slices", "pop error", "phase error");
        for row in &table.rows {
            println!(
                "{:>10.2e} {:>8} {:>14.4e} {:>14.4e}",
                row.dtau, row.n_slices, row.population_error, row.phase_error
            );
        }
        println!(
            "order: population {:?}, phase {:?}\n",
            table.population_order, table.phase_order
        );
    }
}
