// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use super::{CollisionConfig, CollisionError};
use crate::ito_algebra::{r_minus, r_plus, stark_operator, SystemOperator};
use crate::lindblad::DensityMatrix;

/// Truncated annihilation operator on `fock_cutoff + 1` ancilla levels.
pub fn ancilla_annihilation(fock_cutoff: usize) -> SystemOperator {
    let n = fock_cutoff + 1;
    let mut m = DMatrix::zeros(n, n);
    for k in 1..n {
        m[(k - 1, k)] = Complex64::new((k as f64).sqrt(), 0.0);
    }
    SystemOperator::from_matrix(m).expect("square")
}

/// Collision Hamiltonian for one slice (system ⊗ ancilla):
/// `χ√dτ (R₊⊗a + R₋⊗a†) + η·2R₃⊗a†a`.
///
/// The Wiener increments scale as `√dτ`; the gauge increment carries no
/// `dτ` factor since `dΛ·dΛ = dΛ`.
pub fn collision_hamiltonian(cfg: &CollisionConfig) -> SystemOperator {
    let a = ancilla_annihilation(cfg.fock_cutoff);
    let a_dag = a.adjoint();
    let number = &a_dag * &a;
    let g = cfg.chi * cfg.dtau.sqrt();
    (r_plus().kron(&a) + r_minus().kron(&a_dag)).scale_real(g)
        + stark_operator().kron(&number).scale_real(cfg.eta)
}

/// `exp(−i H)` for the collision Hamiltonian, by Hermitian eigendecomposition.
pub fn step_unitary(cfg: &CollisionConfig) -> Result<SystemOperator, CollisionError> {
    cfg.validate()?;
    let h = collision_hamiltonian(cfg).into_matrix();
    let eigen = h.symmetric_eigen();
    let phases = DMatrix::from_diagonal(
        &eigen
            .eigenvalues
            .map(|lambda| Complex64::new(0.0, -lambda).exp()),
    );
    let v = &eigen.eigenvectors;
    let u = v * phases * v.adjoint();
    Ok(SystemOperator::from_matrix(u).expect("square"))
}

/// Joint emitter–ancilla density matrix, ordered system ⊗ ancilla.
#[derive(Debug, Clone, PartialEq)]
pub struct JointState {
    entries: DMatrix<Complex64>,
    ancilla_dim: usize,
}

impl JointState {
    /// `ρ ⊗ |0⟩⟨0|`.
    pub fn embed(rho: &DensityMatrix, fock_cutoff: usize) -> Self {
        let ancilla_dim = fock_cutoff + 1;
        let rho = DMatrix::from_iterator(2, 2, rho.matrix().iter().copied());
        let mut vacuum = DMatrix::zeros(ancilla_dim, ancilla_dim);
        vacuum[(0, 0)] = Complex64::new(1.0, 0.0);
        Self {
            entries: rho.kronecker(&vacuum),
            ancilla_dim,
        }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    /// `U ρ U†`.
    pub fn evolve(&self, unitary: &SystemOperator) -> Self {
        let u = unitary.matrix();
        Self {
            entries: u * &self.entries * u.adjoint(),
            ancilla_dim: self.ancilla_dim,
        }
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    /// Reduced emitter state `Tr_ancilla ρ`.
    pub fn partial_trace(&self) -> Matrix2<Complex64> {
        let n = self.ancilla_dim;
        let mut out = Matrix2::zeros();
        for i in 0..2 {
            for j in 0..2 {
                out[(i, j)] = (0..n).map(|k| self.entries[(i * n + k, j * n + k)]).sum();
            }
        }
        out
    }
}
