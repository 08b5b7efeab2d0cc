// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use nalgebra::Matrix2;
use num_complex::Complex64;
use proptest::prelude::*;
use proptest::strategy::ValueTree;

use stark_qsde::collision_oracle::{step_unitary, CollisionConfig};
use stark_qsde::ito_algebra::{
    coefficient_functions, interaction_exponent, ito_exp, Increment, ItoElement, SystemOperator,
    DEFAULT_MAX_TERMS, DEFAULT_SERIES_TOL, EXCITED,
};
use stark_qsde::lindblad::{
    closed_form_evolution, derive_master_equation, numerical_evolution, suppression_factor,
    Coupling, DensityMatrix, LindbladModel, VacuumState,
};

fn operator() -> impl Strategy<Value = SystemOperator> {
    prop::array::uniform8(-1.0f64..1.0).prop_map(|v| {
        let z: Vec<Complex64> = v.chunks(2).map(|p| Complex64::new(p[0], p[1])).collect();
        SystemOperator::from_row_slice(2, &z).unwrap()
    })
}

fn element() -> impl Strategy<Value = ItoElement> {
    (operator(), operator(), operator(), operator())
        .prop_map(|(a, b, c, d)| ItoElement::new(a, b, c, d).unwrap())
}

/// Uniform-ish point in the Bloch ball.
fn state() -> impl Strategy<Value = DensityMatrix> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, 0.0f64..1.0).prop_map(|(x, y, z, r)| {
        let n = (x * x + y * y + z * z).sqrt().max(1e-12);
        let s = r / n;
        let (x, y, z) = (x * s, y * s, z * s);
        DensityMatrix::from_parts(0.5 * (1.0 + z), Complex64::new(0.5 * x, 0.5 * y)).unwrap()
    })
}

fn coupling() -> impl Strategy<Value = (f64, f64)> {
    (-2.0f64..2.0, -4.0 * PI..4.0 * PI)
}

fn m2(op: &SystemOperator) -> Matrix2<Complex64> {
    let m = op.matrix();
    Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn ito_product_is_associative(a in element(), b in element(), c in element()) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert!(left.max_distance(&right) <= 1e-13);
    }

    #[test]
    fn ito_product_is_bilinear(a in element(), b in element(), c in element(), s in -3.0f64..3.0) {
        let sum_left = a.try_add(&b).unwrap().multiply(&c).unwrap();
        let expanded = a.multiply(&c).unwrap().try_add(&b.multiply(&c).unwrap()).unwrap();
        prop_assert!(sum_left.max_distance(&expanded) <= 1e-13);
        let k = Complex64::new(s, -0.5 * s);
        let scaled = a.scale(k).multiply(&c).unwrap();
        prop_assert!(scaled.max_distance(&a.multiply(&c).unwrap().scale(k)) <= 1e-13);
        let sum_right = c.multiply(&a.try_add(&b).unwrap()).unwrap();
        let expanded = c.multiply(&a).unwrap().try_add(&c.multiply(&b).unwrap()).unwrap();
        prop_assert!(sum_right.max_distance(&expanded) <= 1e-13);
    }

    #[test]
    fn product_only_keeps_table_channels(a in element(), b in element()) {
        // nothing multiplies into dτ from the left or right
        let dt_only = ItoElement::single(Increment::Time, a.dt().clone());
        prop_assert!(dt_only.multiply(&b).unwrap().is_zero());
        prop_assert!(b.multiply(&dt_only).unwrap().is_zero());
    }

    /// `d(U†U) = 0` for `dU = X U` requires `X + X† + X†·X = 0` in the algebra.
    #[test]
    fn exponential_is_unitary_compatible((chi, eta) in coupling()) {
        let x = ito_exp(&interaction_exponent(chi, eta), DEFAULT_SERIES_TOL, DEFAULT_MAX_TERMS)
            .unwrap()
            .to_element();
        let xd = x.adjoint();
        let total = x.try_add(&xd).unwrap().try_add(&xd.multiply(&x).unwrap()).unwrap();
        prop_assert!(total.max_norm() <= 1e-12, "residual {}", total.max_norm());
    }

    #[test]
    fn suppression_is_bounded(eta in -4.0 * PI..4.0 * PI) {
        let s = suppression_factor(eta);
        prop_assert!((0.0..=1.0).contains(&s));
        if eta.abs() > 1e-6 {
            prop_assert!(s < 1.0);
        }
    }

    /// The decay rate is the anti-Hermitian part of the drift on `|E₂⟩`.
    #[test]
    fn no_leak((chi, eta) in coupling()) {
        let coeffs = coefficient_functions(chi, eta);
        let model = derive_master_equation(Coupling::new(chi, eta), &coeffs, &VacuumState).unwrap();
        let drift = coeffs.drift.get(EXCITED, EXCITED);
        prop_assert!((model.gamma + 2.0 * drift.re).abs() <= 1e-12);
        prop_assert!(model.gamma >= 0.0);
        let sigma = model.jump.spectral_norm();
        prop_assert!((model.gamma - 2.0 * sigma * sigma).abs() <= 1e-12);
    }

    /// `rhs = −i[δP, ρ] + CρC† − ½{C†C, ρ}` with the collapse operator `C`.
    #[test]
    fn generator_has_standard_form((chi, eta) in coupling(), rho in state()) {
        let model = LindbladModel::from_coupling(chi, eta).unwrap();
        let h = m2(&model.shift_hamiltonian());
        let c = m2(&model.collapse_operator());
        let r = *rho.matrix();
        let i = Complex64::new(0.0, 1.0);
        let half = Complex64::new(0.5, 0.0);
        let cdc = c.adjoint() * c;
        let standard = -(h * r - r * h) * i + c * r * c.adjoint() - (cdc * r + r * cdc) * half;
        let diff = (model.rhs(&r) - standard).iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(diff <= 1e-12);
    }

    #[test]
    fn closed_form_keeps_state_valid((chi, eta) in coupling(), rho in state(), tau in 0.0f64..50.0) {
        let model = LindbladModel::from_coupling(chi, eta).unwrap();
        let out = closed_form_evolution(&model, &rho, tau).unwrap();
        prop_assert!((out.trace() - 1.0).abs() <= 1e-12);
        prop_assert!(out.eigenvalues().0 >= -1e-12);
    }

    #[test]
    fn excited_population_never_grows((chi, eta) in coupling()) {
        let model = LindbladModel::from_coupling(chi, eta).unwrap();
        let series = numerical_evolution(&model, &DensityMatrix::excited(), 5.0, 200).unwrap();
        for w in series.windows(2) {
            prop_assert!(w[1].rho22() <= w[0].rho22() + 1e-15);
        }
    }

    #[test]
    fn collision_step_is_unitary((chi, eta) in coupling(), dtau in 1e-5f64..0.1, cutoff in 1usize..4) {
        let cfg = CollisionConfig::new(chi, eta, dtau, 1).unwrap().with_fock_cutoff(cutoff);
        let u = step_unitary(&cfg).unwrap();
        let id = SystemOperator::identity(u.dim());
        prop_assert!((&u.adjoint() * &u).max_distance(&id) <= 1e-12);
    }
}

#[test]
fn rk4_preserves_trace_and_positivity_on_grid() {
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    let states: Vec<DensityMatrix> = (0..100)
        .map(|_| state().new_tree(&mut runner).unwrap().current())
        .collect();
    for i in 0..10 {
        for j in 0..10 {
            let chi = 2.0 * i as f64 / 9.0;
            let eta = 4.0 * PI * j as f64 / 9.0;
            let model = LindbladModel::from_coupling(chi, eta).unwrap();
            for rho in &states {
                let series = numerical_evolution(&model, rho, 2.0, 40).unwrap();
                for s in &series {
                    assert!((s.trace() - 1.0).abs() <= 1e-10);
                    assert!(s.eigenvalues().0 >= -1e-12);
                }
            }
        }
    }
}
