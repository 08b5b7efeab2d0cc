// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use super::LindbladError;
use crate::ito_algebra::{
    coefficient_functions, excited_projector, kernels, r_minus, Increment, ItoElement,
    QsdeCoefficients, SystemOperator, EXCITED, GROUND,
};

/// Dimensionless couplings: `chi` for the one-photon channel, `eta` for the
/// Stark (gauge) channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coupling {
    pub chi: f64,
    pub eta: f64,
}

impl Coupling {
    pub fn new(chi: f64, eta: f64) -> Self {
        Self { chi, eta }
    }
}

/// Expectation rules of the photon-free vacuum.
///
/// `dB`, `dB†` and `dΛ` have zero mean; of the second-order products only
/// `dB·dB† = dτ` survives.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VacuumState;

impl VacuumState {
    /// Mean of an increment, in units of `dτ`.
    pub fn mean(&self, increment: Increment) -> f64 {
        match increment {
            Increment::Time => 1.0,
            _ => 0.0,
        }
    }

    /// `E[x]` per unit `dτ`: the `dτ` coefficient, all noise channels average out.
    pub fn expectation(&self, x: &ItoElement) -> SystemOperator {
        Increment::ALL
            .iter()
            .fold(SystemOperator::zeros(x.dim()), |acc, &inc| {
                &acc + &x.channel(inc).scale_real(self.mean(inc))
            })
    }

    /// `Tr_F[(left) ρ⊗|vac⟩⟨vac| (right)]` per unit `dτ`.
    ///
    /// Under the field trace the increment on the right moves in front of
    /// the one on the left, so the pair `(a, b)` contributes
    /// `left_a ρ right_b · E[dI_b dI_a]`.
    pub fn trace_sandwich(
        &self,
        left: &ItoElement,
        rho: &SystemOperator,
        right: &ItoElement,
    ) -> SystemOperator {
        let mut out = SystemOperator::zeros(rho.dim());
        for a in Increment::ALL {
            for b in Increment::ALL {
                let Some(product) = b.product(a) else { continue };
                let weight = self.mean(product);
                if weight == 0.0 {
                    continue;
                }
                let term = left.channel(a) * rho;
                out = &out + &(&term * right.channel(b)).scale_real(weight);
            }
        }
        out
    }
}

/// Reduced master equation of the emitter:
///
/// ```text
/// dρ/dτ = −i[δ R₊R₋, ρ] + 2LρL† − {L†L, ρ},   L = χ√(1 − cos η)/η · R₋
/// ```
///
/// so the population decay rate is `γ = 2‖L‖²` and `ρ₂₁` rotates at `+δ`.
/// The level shift of `|E₂⟩` in the usual sign convention is `−δ`.
#[derive(Debug, Clone, PartialEq)]
pub struct LindbladModel {
    /// `None` for models built directly from rates.
    pub coupling: Option<Coupling>,
    pub gamma: f64,
    pub delta: f64,
    pub jump: SystemOperator,
}

/// Relative tolerance for reading the normal form off the vacuum average.
const NORMAL_FORM_TOL: f64 = 1e-12;

/// Builds the reduced master equation from the increment coefficients.
///
/// Averages `dρ = dU ρ + ρ dU† + dU ρ dU†` over the vacuum, checks that the
/// result has the decay-plus-shift normal form and reads off `γ`, `δ`, `L`.
/// The phase of `L` is not fixed by the dynamics; it is chosen as
/// `sign(χ)·sign(η)` to follow the printed formula.
pub fn derive_master_equation(
    coupling: Coupling,
    coeffs: &QsdeCoefficients,
    vacuum: &VacuumState,
) -> Result<LindbladModel, LindbladError> {
    check_pattern(coeffs)?;
    let du = coeffs.to_element();
    let du_dag = du.adjoint();
    let generator = |rho: &SystemOperator| -> SystemOperator {
        let first = vacuum.expectation(&du);
        let first_dag = vacuum.expectation(&du_dag);
        let second = vacuum.trace_sandwich(&du, rho, &du_dag);
        &(&(&first * rho) + &(rho * &first_dag)) + &second
    };

    let basis = |i: usize, j: usize| SystemOperator::outer(2, i, j);
    // population transfer |E₂⟩⟨E₂| → |E₁⟩⟨E₁|
    let from_excited = generator(&basis(EXCITED, EXCITED));
    let gamma = from_excited.get(GROUND, GROUND).re;
    // coherence ⟨E₁|ρ|E₂⟩ picks up −γ/2 + iδ
    let from_coherence = generator(&basis(GROUND, EXCITED));
    let delta = from_coherence.get(GROUND, EXCITED).im;

    if !(gamma >= -NORMAL_FORM_TOL) {
        return Err(LindbladError::NegativeRate(gamma));
    }
    let gamma = gamma.max(0.0);
    let model = LindbladModel {
        coupling: Some(coupling),
        gamma,
        delta,
        jump: r_minus().scale_real(jump_sign(coupling) * (0.5 * gamma).sqrt()),
    };

    let scale = 1.0 + gamma.abs() + delta.abs();
    let mut residual: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let rho = basis(i, j);
            let raw = generator(&rho);
            let normal = model.rhs(&to_matrix2(&rho));
            residual = residual.max(raw.max_distance(&from_matrix2(&normal)));
        }
    }
    if residual > NORMAL_FORM_TOL * scale {
        return Err(LindbladError::NormalFormMismatch(residual));
    }
    Ok(model)
}

fn jump_sign(coupling: Coupling) -> f64 {
    let sign = |x: f64| if x < 0.0 { -1.0 } else { 1.0 };
    sign(coupling.chi) * sign(coupling.eta)
}

fn check_pattern(coeffs: &QsdeCoefficients) -> Result<(), LindbladError> {
    if coeffs.dim() != 2 {
        return Err(LindbladError::Structure {
            channel: "all",
            reason: format!("expected a two-level system, got dimension {}", coeffs.dim()),
        });
    }
    let allowed = |channel: &'static str,
                   op: &SystemOperator,
                   permitted: &[(usize, usize)]|
     -> Result<(), LindbladError> {
        let tol = NORMAL_FORM_TOL * (1.0 + op.max_norm());
        for i in 0..2 {
            for j in 0..2 {
                let z = op.get(i, j);
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(LindbladError::Structure {
                        channel,
                        reason: format!("non-finite entry at ({i},{j})"),
                    });
                }
                if !permitted.contains(&(i, j)) && z.norm() > tol {
                    return Err(LindbladError::Structure {
                        channel,
                        reason: format!("unexpected entry {z} at ({i},{j})"),
                    });
                }
            }
        }
        Ok(())
    };
    allowed("drift (dτ)", &coeffs.drift, &[(EXCITED, EXCITED)])?;
    allowed("gain (dB)", &coeffs.gain, &[(EXCITED, GROUND)])?;
    allowed("loss (dB†)", &coeffs.loss, &[(GROUND, EXCITED)])?;
    allowed("gauge (dΛ)", &coeffs.gauge, &[(GROUND, GROUND), (EXCITED, EXCITED)])?;
    Ok(())
}

pub(crate) fn to_matrix2(op: &SystemOperator) -> Matrix2<Complex64> {
    let m = op.matrix();
    Matrix2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
}

pub(crate) fn from_matrix2(m: &Matrix2<Complex64>) -> SystemOperator {
    SystemOperator::from_matrix(DMatrix::from_iterator(2, 2, m.iter().copied()))
        .expect("2x2 is square")
}

impl LindbladModel {
    /// Closed-form coefficients for `(χ, η)` pushed through
    /// [`derive_master_equation`].
    pub fn from_coupling(chi: f64, eta: f64) -> Result<Self, LindbladError> {
        derive_master_equation(
            Coupling::new(chi, eta),
            &coefficient_functions(chi, eta),
            &VacuumState,
        )
    }

    /// Model with the given decay rate and coherence phase velocity.
    pub fn from_rates(gamma: f64, delta: f64) -> Result<Self, LindbladError> {
        if !(gamma >= 0.0) || !gamma.is_finite() || !delta.is_finite() {
            return Err(LindbladError::InvalidRates { gamma, delta });
        }
        Ok(Self {
            coupling: None,
            gamma,
            delta,
            jump: r_minus().scale_real((0.5 * gamma).sqrt()),
        })
    }

    /// `δ R₊R₋`.
    pub fn shift_hamiltonian(&self) -> SystemOperator {
        excited_projector().scale_real(self.delta)
    }

    /// Level shift of `|E₂⟩`, `−δ = χ²(sin η − η)/η²`.
    pub fn level_shift(&self) -> f64 {
        -self.delta
    }

    /// `√2·L`, the collapse operator of the standard `LρL† − ½{L†L, ρ}` form.
    pub fn collapse_operator(&self) -> SystemOperator {
        self.jump.scale_real(std::f64::consts::SQRT_2)
    }

    /// Right-hand side `dρ/dτ` of the master equation.
    pub fn rhs(&self, rho: &Matrix2<Complex64>) -> Matrix2<Complex64> {
        let i = Complex64::new(0.0, 1.0);
        let h = to_matrix2(&self.shift_hamiltonian());
        let l = to_matrix2(&self.jump);
        let l_dag = l.adjoint();
        let ldl = l_dag * l;
        let commutator = h * rho - rho * h;
        -commutator * i + (l * rho * l_dag) * Complex64::new(2.0, 0.0) - ldl * rho - rho * ldl
    }
}

/// `γ(χ, η)/γ(χ, 0) = 2(1 − cos η)/η²`, with limit 1 at η = 0.
pub fn suppression_factor(eta: f64) -> f64 {
    2.0 * kernels::decay_kernel(eta)
}

/// `γ = 2χ²(1 − cos η)/η²`.
pub fn decay_rate(chi: f64, eta: f64) -> f64 {
    chi * chi * suppression_factor(eta)
}

/// `δ = χ²(η − sin η)/η²`.
pub fn coherence_shift(chi: f64, eta: f64) -> f64 {
    chi * chi * kernels::shift_kernel(eta)
}
