// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! The Hudson–Parthasarathy algebra of vacuum noise increments.
//!
//! Elements are operator-valued combinations of `dτ`, `dB`, `dB†` and `dΛ`.
//! Products reduce eagerly with the vacuum Ito table
//!
//! ```text
//! dΛ·dΛ = dΛ    dΛ·dB† = dB†    dB·dΛ = dB    dB·dB† = dτ
//! ```
//!
//! and every other ordered pair vanishes. [`ito_exp`] sums the exponential
//! series inside the algebra; [`coefficient_functions`] evaluates the same
//! result in closed form for the emitter generator built by
//! [`interaction_exponent`].

mod element;
pub mod kernels;
mod operator;

use num_complex::Complex64;
use thiserror::Error;

pub use element::{Increment, ItoElement};
pub use operator::{
    excited_projector, ground_projector, r3, r_minus, r_plus, stark_operator, SystemOperator,
    EXCITED, GROUND,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ItoError {
    #[error("incompatible operands: dimension {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("operator must be square and non-empty, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid series parameters: {0}")]
    InvalidSeries(String),
    #[error("Ito exponential did not converge within {terms} terms (last term norm {last_term_norm:e})")]
    NonConvergence { terms: usize, last_term_norm: f64 },
}

/// Coefficients of `dU = (drift dτ + gain dB + loss dB† + gauge dΛ) U`.
#[derive(Debug, Clone, PartialEq)]
pub struct QsdeCoefficients {
    /// coefficient of `dτ`
    pub drift: SystemOperator,
    /// coefficient of `dB`
    pub gain: SystemOperator,
    /// coefficient of `dB†`
    pub loss: SystemOperator,
    /// coefficient of `dΛ`
    pub gauge: SystemOperator,
}

impl QsdeCoefficients {
    pub fn dim(&self) -> usize {
        self.drift.dim()
    }

    pub fn to_element(&self) -> ItoElement {
        ItoElement::new(
            self.drift.clone(),
            self.gain.clone(),
            self.loss.clone(),
            self.gauge.clone(),
        )
        .expect("coefficients share one dimension")
    }

    pub fn max_distance(&self, other: &QsdeCoefficients) -> f64 {
        self.to_element().max_distance(&other.to_element())
    }
}

impl From<ItoElement> for QsdeCoefficients {
    fn from(x: ItoElement) -> Self {
        QsdeCoefficients {
            drift: x.dt().clone(),
            gain: x.db().clone(),
            loss: x.db_dag().clone(),
            gauge: x.dlambda().clone(),
        }
    }
}

/// Default truncation tolerance for [`ito_exp`].
pub const DEFAULT_SERIES_TOL: f64 = 1e-15;
/// Default term cap for [`ito_exp`].
pub const DEFAULT_MAX_TERMS: usize = 400;

/// `−i(χR₊dB + χR₋dB† + η·2R₃ dΛ)`, the exponent generating one step of the
/// emitter-plus-vacuum evolution in dimensionless time.
pub fn interaction_exponent(chi: f64, eta: f64) -> ItoElement {
    let minus_i = Complex64::new(0.0, -1.0);
    ItoElement::new(
        SystemOperator::zeros(2),
        r_plus().scale(minus_i * chi),
        r_minus().scale(minus_i * chi),
        stark_operator().scale(minus_i * eta),
    )
    .expect("all coefficients are 2x2")
}

/// `exp(x) − 1` in reduced form, from the power series `Σ_{n≥1} xⁿ/n!`.
///
/// Each power is reduced through [`ItoElement::multiply`]. Summation stops
/// once the max-norm of the latest term is at most `tol` times the max-norm
/// of the partial sum; `max_terms` caps the number of terms.
///
/// The argument is first scaled by `2^-s` so that its max-norm is at most
/// 1/2, and the result is squared back `s` times with
/// `(1 + X)² − 1 = 2X + X·X`. Summing the unscaled series directly loses
/// about 1e-11 to cancellation once η reaches 4π.
pub fn ito_exp(x: &ItoElement, tol: f64, max_terms: usize) -> Result<QsdeCoefficients, ItoError> {
    if !(tol > 0.0) {
        return Err(ItoError::InvalidSeries(format!("tol must be positive, got {tol}")));
    }
    if max_terms < 2 {
        return Err(ItoError::InvalidSeries(format!(
            "max_terms must be at least 2, got {max_terms}"
        )));
    }
    let norm = x.max_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = x.scale(Complex64::new(0.5f64.powi(squarings as i32), 0.0));
    let mut sum = exp_series(&scaled, tol, max_terms)?;
    for _ in 0..squarings {
        let square = sum.multiply(&sum)?;
        sum = sum.scale(Complex64::new(2.0, 0.0)).try_add(&square)?;
    }
    Ok(sum.into())
}

fn exp_series(x: &ItoElement, tol: f64, max_terms: usize) -> Result<ItoElement, ItoError> {
    let mut sum = x.clone();
    let mut term = x.clone();
    if term.max_norm() <= tol * sum.max_norm() {
        return Ok(sum);
    }
    let mut last_norm = term.max_norm();
    for n in 2..=max_terms {
        term = term.multiply(x)?.scale(Complex64::new(1.0 / n as f64, 0.0));
        sum = sum.try_add(&term)?;
        last_norm = term.max_norm();
        if last_norm <= tol * sum.max_norm() {
            return Ok(sum);
        }
    }
    Err(ItoError::NonConvergence {
        terms: max_terms,
        last_term_norm: last_norm,
    })
}

/// Closed-form `exp(interaction_exponent(χ, η)) − 1`.
///
/// ```text
/// drift = χ² (e^{iη} − 1 − iη)/η² · R₊R₋
/// gain  = −χ (e^{iη} − 1)/η · R₊
/// loss  = −χ (e^{iη} − 1)/η · R₋
/// gauge = (cos η − 1) − i sin η · 2R₃
/// ```
///
/// These are the printed coefficients with the `e^{+iη}` sign; the series in
/// [`ito_exp`] is the reference and agrees with them. Near η = 0 the scalar
/// factors switch to Taylor polynomials (see [`kernels`]).
pub fn coefficient_functions(chi: f64, eta: f64) -> QsdeCoefficients {
    let wiener = wiener_kernel_scaled(chi, eta);
    let (s, c) = eta.sin_cos();
    QsdeCoefficients {
        drift: excited_projector().scale(kernels::drift_kernel(eta) * (chi * chi)),
        gain: r_plus().scale(wiener),
        loss: r_minus().scale(wiener),
        gauge: SystemOperator::identity(2).scale_real(c - 1.0)
            + stark_operator().scale(Complex64::new(0.0, -s)),
    }
}

fn wiener_kernel_scaled(chi: f64, eta: f64) -> Complex64 {
    -kernels::wiener_kernel(eta) * chi
}
