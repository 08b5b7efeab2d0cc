// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::Matrix2;
use num_complex::Complex64;
use thiserror::Error;

use crate::ito_algebra::{EXCITED, GROUND};

pub const HERMITICITY_TOL: f64 = 1e-12;
pub const TRACE_TOL: f64 = 1e-12;
pub const EIGENVALUE_FLOOR: f64 = -1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("density matrix has non-finite entries")]
    NonFinite,
    #[error("density matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("density matrix trace is {0}, expected 1")]
    TraceNotUnit(f64),
    #[error("density matrix has negative eigenvalue {0:e}")]
    NotPositive(f64),
    #[error("state is not pure (purity {0})")]
    NotPure(f64),
    #[error("state vector has zero norm")]
    ZeroVector,
}

/// State of the two-level particle in the basis `(|E₁⟩, |E₂⟩)`.
///
/// The coherence [`rho21`](Self::rho21) is the element `⟨E₁|ρ|E₂⟩`. In this
/// labelling it evolves as `e^{−γτ/2 + iδτ}` under the reduced master
/// equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    entries: Matrix2<Complex64>,
}

impl DensityMatrix {
    pub fn new(entries: Matrix2<Complex64>) -> Result<Self, StateError> {
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(StateError::NonFinite);
        }
        let herm = (entries - entries.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if herm > HERMITICITY_TOL {
            return Err(StateError::NotHermitian(herm));
        }
        let state = Self { entries };
        let tr = state.trace();
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(StateError::TraceNotUnit(tr));
        }
        let (lo, _) = state.eigenvalues();
        if lo < EIGENVALUE_FLOOR {
            return Err(StateError::NotPositive(lo));
        }
        Ok(state)
    }

    pub(crate) fn from_unchecked(entries: Matrix2<Complex64>) -> Self {
        Self { entries }
    }

    pub fn excited() -> Self {
        let mut m = Matrix2::zeros();
        m[(EXCITED, EXCITED)] = Complex64::new(1.0, 0.0);
        Self { entries: m }
    }

    pub fn ground() -> Self {
        let mut m = Matrix2::zeros();
        m[(GROUND, GROUND)] = Complex64::new(1.0, 0.0);
        Self { entries: m }
    }

    /// State with excited population `rho22` and coherence `rho21`.
    pub fn from_parts(rho22: f64, rho21: Complex64) -> Result<Self, StateError> {
        let mut m = Matrix2::zeros();
        m[(GROUND, GROUND)] = Complex64::new(1.0 - rho22, 0.0);
        m[(EXCITED, EXCITED)] = Complex64::new(rho22, 0.0);
        m[(GROUND, EXCITED)] = rho21;
        m[(EXCITED, GROUND)] = rho21.conj();
        Self::new(m)
    }

    /// `|ψ⟩⟨ψ|` for `ψ = ground·|E₁⟩ + excited·|E₂⟩`, normalised.
    pub fn pure(ground: Complex64, excited: Complex64) -> Result<Self, StateError> {
        let norm = (ground.norm_sqr() + excited.norm_sqr()).sqrt();
        if !(norm > 0.0) {
            return Err(StateError::ZeroVector);
        }
        let psi = [ground / norm, excited / norm];
        let mut m = Matrix2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = psi[i] * psi[j].conj();
            }
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &Matrix2<Complex64> {
        &self.entries
    }

    pub fn rho11(&self) -> f64 {
        self.entries[(GROUND, GROUND)].re
    }

    pub fn rho22(&self) -> f64 {
        self.entries[(EXCITED, EXCITED)].re
    }

    /// The coherence `⟨E₁|ρ|E₂⟩`.
    pub fn rho21(&self) -> Complex64 {
        self.entries[(GROUND, EXCITED)]
    }

    pub fn trace(&self) -> f64 {
        (self.entries[(0, 0)] + self.entries[(1, 1)]).re
    }

    /// Eigenvalues `(smallest, largest)`.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let a = self.entries[(0, 0)].re;
        let d = self.entries[(1, 1)].re;
        let b = self.entries[(0, 1)];
        let mean = 0.5 * (a + d);
        let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        (mean - radius, mean + radius)
    }

    pub fn purity(&self) -> f64 {
        (self.entries * self.entries).trace().re
    }

    /// Amplitudes `(ground, excited)` of the dominant eigenvector, for pure
    /// states only.
    pub fn pure_amplitudes(&self) -> Result<[Complex64; 2], StateError> {
        let purity = self.purity();
        if (purity - 1.0).abs() > 1e-10 {
            return Err(StateError::NotPure(purity));
        }
        // ρ = |ψ⟩⟨ψ|: any non-zero column is proportional to ψ
        let col = if self.rho11() >= self.rho22() { GROUND } else { EXCITED };
        let v = [self.entries[(GROUND, col)], self.entries[(EXCITED, col)]];
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        Ok([v[0] / norm, v[1] / norm])
    }

    pub fn max_distance(&self, other: &DensityMatrix) -> f64 {
        (self.entries - other.entries)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_invalid_states() {
        assert!(matches!(
            DensityMatrix::from_parts(1.2, c(0.0, 0.0)),
            Err(StateError::NotPositive(_))
        ));
        assert!(matches!(
            DensityMatrix::from_parts(0.5, c(0.6, 0.0)),
            Err(StateError::NotPositive(_))
        ));
        let mut m = Matrix2::zeros();
        m[(0, 0)] = c(0.5, 0.0);
        assert!(matches!(DensityMatrix::new(m), Err(StateError::TraceNotUnit(_))));
        m[(1, 1)] = c(0.5, 0.0);
        m[(0, 1)] = c(0.1, 0.0);
        assert!(matches!(DensityMatrix::new(m), Err(StateError::NotHermitian(_))));
        m[(0, 1)] = c(f64::NAN, 0.0);
        assert!(matches!(DensityMatrix::new(m), Err(StateError::NonFinite)));
    }

    #[test]
    fn pure_state_roundtrip() {
        let rho = DensityMatrix::pure(c(1.0, 0.0), c(0.0, 1.0)).unwrap();
        assert!((rho.rho22() - 0.5).abs() < 1e-15);
        assert!((rho.rho21() - c(0.0, -0.5)).norm() < 1e-15);
        let amps = rho.pure_amplitudes().unwrap();
        let again = DensityMatrix::pure(amps[0], amps[1]).unwrap();
        assert!(again.max_distance(&rho) < 1e-15);
    }

    #[test]
    fn mixed_state_is_not_pure() {
        let rho = DensityMatrix::from_parts(0.5, c(0.0, 0.0)).unwrap();
        assert!(matches!(rho.pure_amplitudes(), Err(StateError::NotPure(_))));
        assert!(DensityMatrix::pure(c(0.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn basis_states() {
        assert_eq!(DensityMatrix::excited().rho22(), 1.0);
        assert_eq!(DensityMatrix::ground().rho11(), 1.0);
        assert_eq!(DensityMatrix::excited().eigenvalues(), (0.0, 1.0));
    }
}
