// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Vacuum-averages the unitary increment into a master equation and prints
//! its rates.

use std::f64::consts::PI;

use stark_qsde::ito_algebra::{coefficient_functions, GROUND, EXCITED};
use stark_qsde::lindblad::{derive_master_equation, suppression_factor, Coupling, VacuumState};

fn main() {
    let chi = 1.0;
    println!(
        "{:>8} {:>20} {:>20} {:>20} {:>10}",
        "eta", "gamma", "delta", "L on R-", "S(eta)"
    );
    for eta in [0.0, PI / 2.0, PI, 3.0 * PI / 2.0, 2.0 * PI, 3.0 * PI] {
        let coeffs = coefficient_functions(chi, eta);
        let model = derive_master_equation(Coupling::new(chi, eta), &coeffs, &VacuumState)
            .expect("normal form");
        println!(
            "{eta:>8.4} {:>20.15} {:>20.15} {:>20.15} {:>10.6}",
            model.gamma,
            model.delta,
            model.jump.get(GROUND, EXCITED).re,
            suppression_factor(eta)
        );
    }
    println!("\nthe excited level is frozen whenever eta is a nonzero multiple of 2π");
}
