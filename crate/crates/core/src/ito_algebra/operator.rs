// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense operators on the emitter Hilbert space.
//!
//! The two-level basis is ordered `(|E₁⟩, |E₂⟩)`: index 0 is the ground state,
//! index 1 the excited state.

use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::ItoError;

/// Index of the ground state `|E₁⟩`.
pub const GROUND: usize = 0;
/// Index of the excited state `|E₂⟩`.
pub const EXCITED: usize = 1;

/// A dense complex `dim × dim` matrix acting on the system Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemOperator {
    entries: DMatrix<Complex64>,
}

impl SystemOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: DMatrix::zeros(dim, dim),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: DMatrix::identity(dim, dim),
        }
    }

    /// Wraps a square matrix. Fails on non-square or empty input.
    pub fn from_matrix(entries: DMatrix<Complex64>) -> Result<Self, ItoError> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(ItoError::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        Ok(Self { entries })
    }

    /// Builds a `dim × dim` operator from row-major entries.
    pub fn from_row_slice(dim: usize, data: &[Complex64]) -> Result<Self, ItoError> {
        if dim == 0 || data.len() != dim * dim {
            return Err(ItoError::NotSquare {
                rows: dim,
                cols: data.len().checked_div(dim).unwrap_or(0),
            });
        }
        Ok(Self {
            entries: DMatrix::from_row_slice(dim, dim, data),
        })
    }

    /// `|i⟩⟨j|` in a `dim`-dimensional space.
    pub fn outer(dim: usize, i: usize, j: usize) -> Self {
        let mut entries = DMatrix::zeros(dim, dim);
        entries[(i, j)] = Complex64::new(1.0, 0.0);
        Self { entries }
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self {
            entries: self.entries.adjoint(),
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            entries: &self.entries * factor,
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Largest absolute entry.
    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-norm distance to `other`. Panics if the dimensions differ.
    pub fn max_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.dim(), other.dim(), "operator dimension mismatch");
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self * other - other * self
    }

    pub fn kron(&self, other: &Self) -> Self {
        Self {
            entries: self.entries.kronecker(&other.entries),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|z| *z == Complex64::new(0.0, 0.0))
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> f64 {
        self.entries
            .clone()
            .singular_values()
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }
}

impl Add for &SystemOperator {
    type Output = SystemOperator;
    fn add(self, rhs: Self) -> SystemOperator {
        SystemOperator {
            entries: &self.entries + &rhs.entries,
        }
    }
}

impl Add for SystemOperator {
    type Output = SystemOperator;
    fn add(self, rhs: Self) -> SystemOperator {
        &self + &rhs
    }
}

impl Sub for &SystemOperator {
    type Output = SystemOperator;
    fn sub(self, rhs: Self) -> SystemOperator {
        SystemOperator {
            entries: &self.entries - &rhs.entries,
        }
    }
}

impl Sub for SystemOperator {
    type Output = SystemOperator;
    fn sub(self, rhs: Self) -> SystemOperator {
        &self - &rhs
    }
}

impl Mul for &SystemOperator {
    type Output = SystemOperator;
    fn mul(self, rhs: Self) -> SystemOperator {
        SystemOperator {
            entries: &self.entries * &rhs.entries,
        }
    }
}

impl Mul for SystemOperator {
    type Output = SystemOperator;
    fn mul(self, rhs: Self) -> SystemOperator {
        &self * &rhs
    }
}

impl Neg for SystemOperator {
    type Output = SystemOperator;
    fn neg(self) -> SystemOperator {
        SystemOperator {
            entries: -self.entries,
        }
    }
}

/// `R₃ = (|E₂⟩⟨E₂| − |E₁⟩⟨E₁|)/2`.
pub fn r3() -> SystemOperator {
    (excited_projector() - ground_projector()).scale_real(0.5)
}

/// `R₊ = |E₂⟩⟨E₁|`.
pub fn r_plus() -> SystemOperator {
    SystemOperator::outer(2, EXCITED, GROUND)
}

/// `R₋ = |E₁⟩⟨E₂|`.
pub fn r_minus() -> SystemOperator {
    SystemOperator::outer(2, GROUND, EXCITED)
}

/// `|E₂⟩⟨E₂| = R₊R₋`.
pub fn excited_projector() -> SystemOperator {
    SystemOperator::outer(2, EXCITED, EXCITED)
}

/// `|E₁⟩⟨E₁| = R₋R₊`.
pub fn ground_projector() -> SystemOperator {
    SystemOperator::outer(2, GROUND, GROUND)
}

/// The operator multiplying `η dΛ` in the interaction exponent:
/// `2R₃ = |E₂⟩⟨E₂| − |E₁⟩⟨E₁|`, eigenvalues ±1.
///
/// With this normalisation the Ito exponential reproduces the closed-form
/// coefficients in [`super::coefficient_functions`] term for term; the gauge
/// coefficient is `e^{−iη·2R₃} − 1 = cos η − 1 − i sin η · 2R₃`.
pub fn stark_operator() -> SystemOperator {
    r3().scale_real(2.0)
}
