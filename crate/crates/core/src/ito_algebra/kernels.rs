// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Scalar functions of the Stark parameter η with removable singularities at
//! η = 0. Below [`TAYLOR_THRESHOLD`] they are evaluated from their Taylor
//! polynomials.

use num_complex::Complex64;

/// `|η|` below which the Taylor branch is used.
pub const TAYLOR_THRESHOLD: f64 = 1e-4;

/// `(1 − cos η)/η²`, limit 1/2.
pub fn decay_kernel(eta: f64) -> f64 {
    if eta.abs() < TAYLOR_THRESHOLD {
        let e2 = eta * eta;
        0.5 - e2 / 24.0 + e2 * e2 / 720.0 - e2 * e2 * e2 / 40_320.0
    } else {
        let s = (0.5 * eta).sin();
        2.0 * s * s / (eta * eta)
    }
}

/// `(η − sin η)/η²`, limit 0.
pub fn shift_kernel(eta: f64) -> f64 {
    if eta.abs() < TAYLOR_THRESHOLD {
        let e2 = eta * eta;
        eta * (1.0 / 6.0 - e2 / 120.0 + e2 * e2 / 5_040.0)
    } else {
        (eta - eta.sin()) / (eta * eta)
    }
}

/// `(e^{iη} − 1 − iη)/η² = −[(1 − cos η) + i(η − sin η)]/η²`, limit −1/2.
pub fn drift_kernel(eta: f64) -> Complex64 {
    -Complex64::new(decay_kernel(eta), shift_kernel(eta))
}

/// `(e^{iη} − 1)/η`, limit i.
pub fn wiener_kernel(eta: f64) -> Complex64 {
    if eta.abs() < TAYLOR_THRESHOLD {
        // Σ_m i^{m+1} η^m / (m+1)!
        let e2 = eta * eta;
        let re = -eta / 2.0 + eta * e2 / 24.0 - eta * e2 * e2 / 720.0;
        let im = 1.0 - e2 / 6.0 + e2 * e2 / 120.0 - e2 * e2 * e2 / 5_040.0;
        Complex64::new(re, im)
    } else {
        let s = (0.5 * eta).sin();
        Complex64::new(-2.0 * s * s, eta.sin()) / eta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branches_meet_at_threshold() {
        for &eta in &[TAYLOR_THRESHOLD, -TAYLOR_THRESHOLD] {
            let below = eta * (1.0 - 1e-12);
            let above = eta * (1.0 + 1e-12);
            assert!((decay_kernel(below) - decay_kernel(above)).abs() < 1e-12);
            assert!((shift_kernel(below) - shift_kernel(above)).abs() < 1e-12);
            assert!((wiener_kernel(below) - wiener_kernel(above)).norm() < 1e-12);
        }
    }

    #[test]
    fn limits_at_zero() {
        assert_eq!(decay_kernel(0.0), 0.5);
        assert_eq!(shift_kernel(0.0), 0.0);
        assert_eq!(drift_kernel(0.0), Complex64::new(-0.5, -0.0));
        assert_eq!(wiener_kernel(0.0), Complex64::new(0.0, 1.0));
    }

    #[test]
    fn closed_forms_away_from_zero() {
        let eta = std::f64::consts::PI;
        assert!((decay_kernel(eta) - 2.0 / (eta * eta)).abs() < 1e-15);
        assert!((shift_kernel(eta) - 1.0 / eta).abs() < 1e-15);
        let w = wiener_kernel(eta);
        assert!((w - Complex64::new(-2.0 / eta, 0.0)).norm() < 1e-15);
    }
}
