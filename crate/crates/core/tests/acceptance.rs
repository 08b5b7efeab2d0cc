// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stark_qsde::collision_oracle::{convergence_study, fit_order, mc_unravel, CollisionConfig, OrderFit};
use stark_qsde::ito_algebra::{
    coefficient_functions, excited_projector, interaction_exponent, ito_exp, r_minus, Increment,
    ItoElement, DEFAULT_MAX_TERMS,
};
use stark_qsde::lindblad::{
    closed_form_evolution, decay_rate, derive_master_equation, numerical_evolution,
    suppression_factor, Coupling, DensityMatrix, LindbladModel, VacuumState,
};
use stark_qsde::physical_params::{
    map_one_quantum, map_two_quantum, Cavity, Level, LevelSystem, ResonanceKind, ResonanceSpec,
    Thresholds,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(elapsed: Duration, limit_s: f64) -> bool {
    elapsed.as_secs_f64() < limit_s
}

fn random_state(rng: &mut ChaCha8Rng) -> DensityMatrix {
    loop {
        let (x, y, z): (f64, f64, f64) = (
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        if x * x + y * y + z * z <= 1.0 {
            return DensityMatrix::from_parts(0.5 * (1.0 + z), Complex64::new(0.5 * x, 0.5 * y)).unwrap();
        }
    }
}

fn ito_table() -> Outcome {
    use Increment::*;
    let start = Instant::now();
    let expected = |a: Increment, b: Increment| match (a, b) {
        (Gauge, Gauge) => Some(Gauge),
        (Gauge, Creation) => Some(Creation),
        (Annihilation, Gauge) => Some(Annihilation),
        (Annihilation, Creation) => Some(Time),
        _ => None,
    };
    let mut mismatches = 0;
    for a in Increment::ALL {
        for b in Increment::ALL {
            let product = ItoElement::basis(a, 2).multiply(&ItoElement::basis(b, 2)).unwrap();
            let want = match expected(a, b) {
                Some(c) => ItoElement::basis(c, 2),
                None => ItoElement::zero(2),
            };
            // exact: every coefficient is 0 or the identity
            if product != want || a.product(b) != expected(a, b) {
                mismatches += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    check(
        mismatches == 0 && within(elapsed, 1.0),
        format!("16 products, {mismatches} mismatches, {:.3} ms", elapsed.as_secs_f64() * 1e3),
    )
}

fn exponential_expansion() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1705);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let chi = rng.random_range(-2.0..2.0);
        let eta = rng.random_range(-4.0 * PI..4.0 * PI);
        let series = ito_exp(&interaction_exponent(chi, eta), 1e-15, DEFAULT_MAX_TERMS).map_err(|e| e.to_string())?;
        worst = worst.max(series.max_distance(&coefficient_functions(chi, eta)));
    }
    let mut limit: f64 = 0.0;
    for chi in [-2.0, -0.5, 1.0, 1.7] {
        // the Stark part of the drift is about chi^2 eta/6
        for eta in [0.0, 1e-12, -1e-12, 2e-11] {
            let series = ito_exp(&interaction_exponent(chi, eta), 1e-15, DEFAULT_MAX_TERMS).map_err(|e| e.to_string())?;
            let stark_free = excited_projector().scale_real(-0.5 * chi * chi);
            limit = limit.max(series.drift.max_distance(&stark_free));
        }
    }
    let elapsed = start.elapsed();
    check(
        worst <= 1e-12 && limit <= 1e-10 && within(elapsed, 10.0),
        format!(
            "200 pairs max deviation {worst:.2e}, eta->0 drift deviation {limit:.2e}, {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

fn master_equation_normal_form() -> Outcome {
    let mut worst = [0.0f64; 3];
    for i in 0..20 {
        for j in 0..20 {
            let chi = -2.0 + 4.0 * i as f64 / 19.0;
            let eta = -4.0 * PI + 8.0 * PI * j as f64 / 19.0;
            let series = ito_exp(&interaction_exponent(chi, eta), 1e-15, DEFAULT_MAX_TERMS).map_err(|e| e.to_string())?;
            let model = derive_master_equation(Coupling::new(chi, eta), &series, &VacuumState).map_err(|e| e.to_string())?;
            let c = 1.0 - eta.cos();
            let gamma = 2.0 * chi * chi * c / (eta * eta);
            let delta = chi * chi * (eta - eta.sin()) / (eta * eta);
            let jump = r_minus().scale_real(chi * c.sqrt() / eta);
            worst[0] = worst[0].max((model.gamma - gamma).abs());
            worst[1] = worst[1].max((model.delta - delta).abs());
            worst[2] = worst[2].max(model.jump.max_distance(&jump));
        }
    }
    let mut limit: f64 = 0.0;
    for chi in [-2.0, -1.0, 0.3, 1.0, 2.0] {
        let model = LindbladModel::from_coupling(chi, 0.0).map_err(|e| e.to_string())?;
        limit = limit.max((model.gamma - chi * chi).abs()).max((decay_rate(chi, 0.0) - chi * chi).abs());
    }
    check(
        worst.iter().all(|&w| w <= 1e-12) && limit <= 1e-15,
        format!(
            "20x20 grid: gamma {:.1e}, delta {:.1e}, L {:.1e}; gamma(chi,0)=chi^2 within {limit:.1e}",
            worst[0], worst[1], worst[2]
        ),
    )
}

fn suppression_bound() -> Outcome {
    let mut in_range = true;
    for k in 0..10_000 {
        let eta = -4.0 * PI + 8.0 * PI * k as f64 / 9_999.0;
        let s = suppression_factor(eta);
        in_range &= (0.0..=1.0).contains(&s);
    }
    let s0 = suppression_factor(0.0);
    let s2pi = suppression_factor(2.0 * PI);
    let spi = suppression_factor(PI);
    let model = LindbladModel::from_coupling(1.0, 2.0 * PI).map_err(|e| e.to_string())?;
    let rho0 = DensityMatrix::from_parts(0.8, Complex64::new(0.1, 0.3)).unwrap();
    let mut drift: f64 = 0.0;
    for k in 0..=1000 {
        let tau = 100.0 * k as f64 / 1000.0;
        let rho = closed_form_evolution(&model, &rho0, tau).map_err(|e| e.to_string())?;
        drift = drift.max((rho.rho22() - 0.8).abs());
    }
    check(
        in_range && s0 == 1.0 && s2pi <= 1e-15 && (spi - 4.0 / (PI * PI)).abs() <= 1e-12 && drift <= 1e-15,
        format!(
            "S in [0,1] on 1e4 samples: {in_range}, S(0)={s0}, S(2pi)={s2pi:.1e}, S(pi)-4/pi^2={:.1e}, frozen drift {drift:.1e}",
            spi - 4.0 / (PI * PI)
        ),
    )
}

fn collision_equivalence() -> Outcome {
    let start = Instant::now();
    let rho0 = DensityMatrix::pure(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8)).unwrap();
    let mut ok = true;
    let mut parts = Vec::new();
    for (label, eta) in [("0", 0.0), ("pi/2", PI / 2.0), ("pi", PI), ("3pi/2", 1.5 * PI), ("2pi", 2.0 * PI)] {
        let base = CollisionConfig::new(1.0, eta, 1e-2, 100).map_err(|e| e.to_string())?;
        let table = convergence_study(&base, &rho0, 4).map_err(|e| e.to_string())?;
        let last = table.rows.last().unwrap();
        let final_error = last.population_error.max(last.phase_error);
        // at eta = 2pi gamma vanishes and the population error is second order
        let at_least_first = |o: OrderFit| match o {
            OrderFit::Fitted(p) => p >= 0.8,
            OrderFit::Exact => true,
            OrderFit::Undetermined => false,
        };
        let orders = [table.population_order, table.phase_order];
        let orders_ok = orders.iter().all(|&o| at_least_first(o))
            && orders.iter().any(|o| matches!(o, OrderFit::Fitted(_)) && o.within(0.8, 1.2));
        ok &= orders_ok && table.monotone && final_error <= 2e-3;
        let show = |o: OrderFit| match o {
            OrderFit::Fitted(p) => format!("{p:.3}"),
            other => format!("{other:?}"),
        };
        parts.push(format!(
            "eta={label}: p={}/{} err={final_error:.1e}",
            show(table.population_order),
            show(table.phase_order)
        ));
    }
    let elapsed = start.elapsed();
    ok &= within(elapsed, 60.0);
    check(ok, format!("{}; {:.1} s", parts.join(", "), elapsed.as_secs_f64()))
}

fn monte_carlo() -> Outcome {
    let model = LindbladModel::from_rates(1.0, 0.0).map_err(|e| e.to_string())?;
    let rho0 = DensityMatrix::excited();
    let out = mc_unravel(&model, &rho0, 10_000, 1e-3, 1000, 20_261_019).map_err(|e| e.to_string())?;
    let mean = out.average[1000].rho22();
    let sigma = out.rho22_std_error[1000];
    let z = (mean - (-1.0f64).exp()) / sigma;

    let frozen = LindbladModel::from_coupling(1.0, 2.0 * PI).map_err(|e| e.to_string())?;
    let still = mc_unravel(&frozen, &rho0, 10_000, 1e-2, 100, 5).map_err(|e| e.to_string())?;
    let jumps = still.total_jumps();

    let a = mc_unravel(&model, &rho0, 700, 1e-3, 300, 99).map_err(|e| e.to_string())?;
    let b = mc_unravel(&model, &rho0, 700, 1e-3, 300, 99).map_err(|e| e.to_string())?;
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| e.to_string())?
        .install(|| mc_unravel(&model, &rho0, 700, 1e-3, 300, 99))
        .map_err(|e| e.to_string())?;
    let reproducible = a == b && a == single;

    check(
        z.abs() <= 4.0 && (4e-3..6e-3).contains(&sigma) && jumps == 0 && reproducible,
        format!(
            "rho22(1) = {mean:.5} (z = {z:+.2}, sigma {sigma:.2e}); eta=2pi jumps {jumps}; bit-identical across runs and thread counts: {reproducible}"
        ),
    )
}

fn rk4_order_and_trace() -> Outcome {
    let model = LindbladModel::from_coupling(2.0, 1.0).map_err(|e| e.to_string())?;
    let rho0 = DensityMatrix::from_parts(0.7, Complex64::new(0.3, -0.2)).unwrap();
    let exact = closed_form_evolution(&model, &rho0, 1.0).map_err(|e| e.to_string())?;
    let steps = [8usize, 16, 32, 64];
    let mut hs = Vec::new();
    let mut errors = Vec::new();
    for &n in &steps {
        let series = numerical_evolution(&model, &rho0, 1.0, n).map_err(|e| e.to_string())?;
        hs.push(1.0 / n as f64);
        errors.push(series[n].max_distance(&exact));
    }
    let slope = match fit_order(&hs, &errors) {
        OrderFit::Fitted(p) => p,
        _ => f64::NAN,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut drift: f64 = 0.0;
    for _ in 0..100 {
        let rho = random_state(&mut rng);
        let chi = rng.random_range(0.0..2.0);
        let eta = rng.random_range(0.0..4.0 * PI);
        let model = LindbladModel::from_coupling(chi, eta).map_err(|e| e.to_string())?;
        for s in numerical_evolution(&model, &rho, 3.0, 60).map_err(|e| e.to_string())? {
            drift = drift.max((s.trace() - 1.0).abs());
        }
    }
    check(
        (3.7..=4.3).contains(&slope) && drift <= 1e-10,
        format!("fitted slope {slope:.3} (errors {:.1e} .. {:.1e}); trace drift {drift:.1e} over 100 states", errors[0], errors[3]),
    )
}

fn level_system(freqs: &[f64], couplings: &[(usize, usize, f64)], hbar: f64) -> LevelSystem {
    let n = freqs.len();
    let levels = freqs
        .iter()
        .enumerate()
        .map(|(i, &freq)| Level {
            label: format!("E{}", i + 1),
            freq,
        })
        .collect();
    let mut d = DMatrix::zeros(n, n);
    for &(j, k, v) in couplings {
        d[(j - 1, k - 1)] = Complex64::new(v, 0.0);
        d[(k - 1, j - 1)] = Complex64::new(v, 0.0);
    }
    LevelSystem::new(levels, d, hbar).unwrap()
}

/// Raman toy with `Π(Ω_r, Ω_r) = Π₂₁(Ω_r)`, coupling chosen to hit `chi`.
fn raman_toy(delta_omega_c: f64, chi: f64) -> (LevelSystem, ResonanceSpec) {
    let omega_r = 100.0;
    let base = level_system(&[0.0, 1.0, 300.0], &[(1, 3, 1.0), (2, 3, 1.0)], 1.0);
    let pi21 = base.pi_21(omega_r).unwrap().re;
    let pi = base.pi_composite(omega_r, omega_r).unwrap();
    let extra = ((pi21 - pi) / (1.0 / 301.0 + 1.0 / 101.0)).sqrt();
    let system = level_system(&[0.0, 1.0, 300.0, -200.0], &[(1, 3, 1.0), (2, 3, 1.0), (2, 4, extra)], 1.0);
    let spec = ResonanceSpec {
        kind: ResonanceKind::TwoQuantum,
        omega21: 1.0,
        omega_r,
        coupling: (chi / (delta_omega_c * pi21)).sqrt(),
        cavity: Some(Cavity {
            omega_c: 99.0,
            delta_omega_c,
            g: None,
        }),
    };
    (system, spec)
}

fn parameter_mapping() -> Outcome {
    let e = |x: stark_qsde::physical_params::ParamError| x.to_string();
    let system = level_system(&[0.0, 1.0, -1.0], &[(1, 2, 1.0), (2, 3, 3f64.sqrt())], 1.0);
    let spec = ResonanceSpec {
        kind: ResonanceKind::OneQuantum,
        omega21: 1.0,
        omega_r: 1.0,
        coupling: 1.0,
        cavity: None,
    };
    let one = map_one_quantum(&spec, &system, &Thresholds::default()).map_err(e)?;

    let (raman, raman_spec) = raman_toy(1.0, 0.1);
    let ten = map_two_quantum(&raman_spec, &raman, &Thresholds::default()).map_err(e)?;
    let (wide, wide_spec) = raman_toy(100.0, 1.0);
    let loose = Thresholds {
        cavity_width_ratio: 1.0,
        ..Thresholds::default()
    };
    let unity = map_two_quantum(&wide_spec, &wide, &loose).map_err(e)?;

    let (a, f, b) = (6.62e-27, 2.4e15, 3.1e-18);
    let scaled = system.rescaled(a, f, b);
    let scaled_spec = ResonanceSpec {
        omega21: f,
        omega_r: f,
        coupling: a / b,
        ..spec
    };
    let one_scaled = map_one_quantum(&scaled_spec, &scaled, &Thresholds::default()).map_err(e)?;
    let cavity = raman_spec.cavity.unwrap();
    let raman_scaled_spec = ResonanceSpec {
        omega21: raman_spec.omega21 * f,
        omega_r: raman_spec.omega_r * f,
        coupling: raman_spec.coupling * a / b,
        cavity: Some(Cavity {
            omega_c: cavity.omega_c * f,
            delta_omega_c: cavity.delta_omega_c * f,
            g: None,
        }),
        ..raman_spec
    };
    let ten_scaled = map_two_quantum(&raman_scaled_spec, &raman.rescaled(a, f, b), &Thresholds::default()).map_err(e)?;
    let rel = |x: f64, y: f64| ((x - y) / y).abs();
    let invariance = [
        rel(one_scaled.chi, one.chi),
        rel(one_scaled.eta, one.eta),
        rel(ten_scaled.chi, ten.chi),
        rel(ten_scaled.eta, ten.eta),
    ]
    .into_iter()
    .fold(0.0, f64::max);

    let exact = (one.chi - 1.0).abs() <= 1e-15
        && (one.eta - 2.0).abs() <= 1e-14
        && (ten.eta - 10.0).abs() <= 1e-12
        && (unity.chi - 1.0).abs() <= 1e-14
        && (unity.eta - 1.0).abs() <= 1e-12;
    check(
        exact && invariance <= 1e-12,
        format!(
            "one-quantum (chi, eta) = ({}, {}); Raman eta = {:.15}; ratio-one eta = {:.15}; rescaling deviation {invariance:.1e}",
            one.chi, one.eta, ten.eta, unity.eta
        ),
    )
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("Ito table conformance", ito_table),
        ("exponential expansion", exponential_expansion),
        ("master-equation normal form", master_equation_normal_form),
        ("suppression bound and freezing", suppression_bound),
        ("collision-oracle equivalence", collision_equivalence),
        ("Monte Carlo unraveling", monte_carlo),
        ("RK4 vs closed form", rk4_order_and_trace),
        ("parameter mapping", parameter_mapping),
    ];
    let mut failures = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail} [{secs:.1} s]"),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {name}: {detail} [{secs:.1} s]");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
