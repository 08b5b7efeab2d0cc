// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! From emitter levels and dipoles to the dimensionless couplings.

use nalgebra::DMatrix;
use num_complex::Complex64;
use stark_qsde::physical_params::{
    map_params, Cavity, Level, LevelSystem, Mapping, ResonanceKind, ResonanceSpec, Thresholds,
};

fn levels(freqs: &[f64]) -> Vec<Level> {
    freqs
        .iter()
        .enumerate()
        .map(|(i, &freq)| Level {
            label: format!("E{}", i + 1),
            freq,
        })
        .collect()
}

fn symmetric(n: usize, entries: &[(usize, usize, f64)]) -> DMatrix<Complex64> {
    let mut d = DMatrix::zeros(n, n);
    for &(j, k, v) in entries {
        d[(j - 1, k - 1)] = Complex64::new(v, 0.0);
        d[(k - 1, j - 1)] = Complex64::new(v, 0.0);
    }
    d
}

fn report(label: &str, m: &Mapping) {
    println!("{label}: chi = {:.12}, eta = {:.12}", m.chi(), m.eta());
    match m {
        Mapping::OneQuantum(q) => println!("  significance {:.4} (essential: {})", q.significance, q.stark_significant),
        Mapping::TwoQuantum(q) => println!("  |Pi_21| = {:.4e}, eta/chi = {:.4}", q.pi_21, q.eta_over_chi),
    }
}

fn main() {
    // single intermediate level two frequency units below the excited state
    let system = LevelSystem::new(
        levels(&[0.0, 1.0, -1.0]),
        symmetric(3, &[(1, 2, 1.0), (2, 3, 3f64.sqrt())]),
        1.0,
    )
    .expect("valid system");
    let spec = ResonanceSpec {
        kind: ResonanceKind::OneQuantum,
        omega21: 1.0,
        omega_r: 1.0,
        coupling: 1.0,
        cavity: None,
    };
    let one = map_params(&spec, &system, &Thresholds::default()).expect("mapping");
    report("one-quantum", &one);

    // Raman configuration in a narrow cavity
    let system = LevelSystem::new(
        levels(&[0.0, 1.0, 300.0]),
        symmetric(3, &[(1, 3, 1.0), (2, 3, 1.0)]),
        1.0,
    )
    .expect("valid system");
    let spec = ResonanceSpec {
        kind: ResonanceKind::TwoQuantum,
        omega21: 1.0,
        omega_r: 100.0,
        coupling: 2.0,
        cavity: Some(Cavity {
            omega_c: 99.0,
            delta_omega_c: 1.0,
            g: None,
        }),
    };
    let two = map_params(&spec, &system, &Thresholds::default()).expect("mapping");
    report("two-quantum", &two);

    // the same physics in different units
    let scaled = system.rescaled(10.0, 1e3, 0.5);
    let spec = ResonanceSpec {
        omega21: 1e3,
        omega_r: 1e5,
        coupling: 2.0 * 10.0 / 0.5,
        cavity: Some(Cavity {
            omega_c: 99e3,
            delta_omega_c: 1e3,
            g: None,
        }),
        ..spec
    };
    let again = map_params(&spec, &scaled, &Thresholds::default()).expect("mapping");
    report("two-quantum, rescaled units", &again);
}
