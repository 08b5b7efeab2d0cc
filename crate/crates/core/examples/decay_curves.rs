// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Excited-state population for several Stark couplings, closed form next to
//! RK4.

use std::f64::consts::PI;

use num_complex::Complex64;
use stark_qsde::lindblad::{closed_form_evolution, numerical_evolution, DensityMatrix, LindbladModel};

fn main() {
    let etas = [0.0, PI / 2.0, PI, 2.0 * PI];
    let rho0 = DensityMatrix::from_parts(0.5, Complex64::new(0.5, 0.0)).expect("pure state");
    let tau_end = 4.0;
    let steps = 8;

    let models: Vec<LindbladModel> = etas
        .iter()
        .map(|&eta| LindbladModel::from_coupling(1.0, eta).expect("model"))
        .collect();
    let rk4: Vec<Vec<DensityMatrix>> = models
        .iter()
        .map(|m| numerical_evolution(m, &rho0, tau_end, steps * 50).expect("rk4"))
        .collect();

    print!("{:>6}", "tau");
    for eta in etas {
        print!("  rho22(eta={eta:.3})");
    }
    println!();
    for i in 0..=steps {
        let tau = tau_end * i as f64 / steps as f64;
        print!("{tau:>6.2}");
        for (m, series) in models.iter().zip(&rk4) {
            let exact = closed_form_evolution(m, &rho0, tau).expect("closed form").rho22();
            let numeric = series[i * 50].rho22();
            print!("  {exact:.6} ({:+.0e})", numeric - exact);
        }
        println!();
    }
}
