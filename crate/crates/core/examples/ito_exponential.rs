// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Sums exp(x) − 1 inside the Ito algebra for the emitter generator and
//! compares it with the closed-form coefficients.

use std::f64::consts::PI;

use stark_qsde::ito_algebra::{
    coefficient_functions, interaction_exponent, ito_exp, DEFAULT_MAX_TERMS, DEFAULT_SERIES_TOL,
    EXCITED, GROUND,
};

fn main() {
    let chi = 1.0;
    println!("{:>10} {:>26} {:>26} {:>12}", "eta", "drift on P", "gain on R+", "max dev");
    for eta in [0.0, 1e-6, PI / 2.0, PI, 2.0 * PI, 4.0 * PI] {
        let series = ito_exp(&interaction_exponent(chi, eta), DEFAULT_SERIES_TOL, DEFAULT_MAX_TERMS)
            .expect("series converges");
        let closed = coefficient_functions(chi, eta);
        let drift = series.drift.get(EXCITED, EXCITED);
        let gain = series.gain.get(EXCITED, GROUND);
        println!(
            "{eta:>10.6} {:>12.8}{:>+12.8}i {:>12.8}{:>+12.8}i {:>12.2e}",
            drift.re,
            drift.im,
            gain.re,
            gain.im,
            series.max_distance(&closed)
        );
    }
    // at η = 2π the one-photon channels vanish and only the gauge term remains
    let frozen = coefficient_functions(chi, 2.0 * PI);
    println!("\nη = 2π gain magnitude {:.2e}", frozen.gain.max_norm());
}
