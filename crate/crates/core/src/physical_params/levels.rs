// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::ParamError;

/// Default relative guard on perturbative denominators, `|ω_kj ± ν| > guard·|ν|`.
pub const DEFAULT_RESONANCE_GUARD: f64 = 1e-6;
/// Default tolerance on `d_kj = conj(d_jk)`.
pub const DEFAULT_HERMITICITY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Level {
    pub label: String,
    /// level frequency `E_k/ħ`
    pub freq: f64,
}

/// Emitter levels and dipole matrix elements in one self-consistent unit
/// system.
///
/// Levels are numbered from 1: level 1 is the ground state `|E₁⟩`, level 2
/// the excited state `|E₂⟩`, and levels 3.. are intermediate states that
/// enter the Stark and two-photon sums. Transition frequencies are
/// `ω_kj = ω_k − ω_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelSystem {
    levels: Vec<Level>,
    dipoles: DMatrix<Complex64>,
    hbar: f64,
    resonance_guard: f64,
}

impl LevelSystem {
    pub fn new(levels: Vec<Level>, dipoles: DMatrix<Complex64>, hbar: f64) -> Result<Self, ParamError> {
        Self::with_tolerance(levels, dipoles, hbar, DEFAULT_HERMITICITY_TOL)
    }

    pub fn with_tolerance(
        levels: Vec<Level>,
        dipoles: DMatrix<Complex64>,
        hbar: f64,
        hermiticity_tol: f64,
    ) -> Result<Self, ParamError> {
        let n = levels.len();
        if n < 2 {
            return Err(ParamError::InvalidSystem(format!(
                "need at least the two resonant levels, got {n}"
            )));
        }
        if dipoles.nrows() != n || dipoles.ncols() != n {
            return Err(ParamError::InvalidSystem(format!(
                "dipole matrix is {}x{}, expected {n}x{n}",
                dipoles.nrows(),
                dipoles.ncols()
            )));
        }
        if !(hbar > 0.0) || !hbar.is_finite() {
            return Err(ParamError::InvalidSystem(format!("hbar must be positive, got {hbar}")));
        }
        if let Some(level) = levels.iter().find(|l| !l.freq.is_finite()) {
            return Err(ParamError::InvalidSystem(format!(
                "level {} has a non-finite frequency",
                level.label
            )));
        }
        for k in 0..n {
            if dipoles[(k, k)].norm() > hermiticity_tol {
                return Err(ParamError::InvalidSystem(format!(
                    "diagonal dipole d_{}{} must vanish",
                    k + 1,
                    k + 1
                )));
            }
            for j in 0..n {
                let z = dipoles[(k, j)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(ParamError::InvalidSystem(format!(
                        "dipole d_{}{} is not finite",
                        k + 1,
                        j + 1
                    )));
                }
                if (z - dipoles[(j, k)].conj()).norm() > hermiticity_tol {
                    return Err(ParamError::InvalidSystem(format!(
                        "dipole matrix is not Hermitian at ({}, {})",
                        k + 1,
                        j + 1
                    )));
                }
                if k != j && z.norm() > 0.0 && levels[k].freq == levels[j].freq {
                    return Err(ParamError::InvalidSystem(format!(
                        "levels {} and {} are coupled but degenerate",
                        k + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(Self {
            levels,
            dipoles,
            hbar,
            resonance_guard: DEFAULT_RESONANCE_GUARD,
        })
    }

    pub fn with_resonance_guard(mut self, guard: f64) -> Self {
        self.resonance_guard = guard;
        self
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn resonance_guard(&self) -> f64 {
        self.resonance_guard
    }

    fn check_index(&self, k: usize) -> Result<usize, ParamError> {
        if k == 0 || k > self.levels.len() {
            return Err(ParamError::UnknownLevel(k));
        }
        Ok(k - 1)
    }

    /// `d_kj` (1-based).
    pub fn dipole(&self, k: usize, j: usize) -> Result<Complex64, ParamError> {
        Ok(self.dipoles[(self.check_index(k)?, self.check_index(j)?)])
    }

    /// `ω_kj = ω_k − ω_j` (1-based).
    pub fn transition_frequency(&self, k: usize, j: usize) -> Result<f64, ParamError> {
        Ok(self.levels[self.check_index(k)?].freq - self.levels[self.check_index(j)?].freq)
    }

    /// Uniformly rescaled copy: dipoles × `dipole_scale`, frequencies ×
    /// `freq_scale`, ħ × `hbar_scale`.
    pub fn rescaled(&self, hbar_scale: f64, freq_scale: f64, dipole_scale: f64) -> Self {
        Self {
            levels: self
                .levels
                .iter()
                .map(|l| Level {
                    label: l.label.clone(),
                    freq: l.freq * freq_scale,
                })
                .collect(),
            dipoles: &self.dipoles * Complex64::new(dipole_scale, 0.0),
            hbar: self.hbar * hbar_scale,
            resonance_guard: self.resonance_guard,
        }
    }

    fn guard_denominator(&self, k: usize, j: usize, denom: f64, nu: f64) -> Result<f64, ParamError> {
        if denom.abs() <= self.resonance_guard * nu.abs() || denom == 0.0 {
            return Err(ParamError::NearResonance {
                k,
                j,
                denominator: denom,
            });
        }
        Ok(denom)
    }

    /// Stark sum of level `k`:
    /// `Π_k(ν) = Σ_j |d_kj|²/ħ · (1/(ω_kj + ν) + 1/(ω_kj − ν))`.
    ///
    /// The sum runs over intermediate levels `j ≥ 3`; the resonant pair
    /// `1 ↔ 2` is the real transition and is excluded. Uncoupled levels are
    /// skipped.
    pub fn pi_k(&self, k: usize, nu: f64) -> Result<f64, ParamError> {
        self.check_index(k)?;
        let mut sum = 0.0;
        for j in 3..=self.levels.len() {
            if j == k {
                continue;
            }
            let d2 = self.dipole(k, j)?.norm_sqr();
            if d2 == 0.0 {
                continue;
            }
            let w = self.transition_frequency(k, j)?;
            let plus = self.guard_denominator(k, j, w + nu, nu)?;
            let minus = self.guard_denominator(k, j, w - nu, nu)?;
            sum += d2 / self.hbar * (1.0 / plus + 1.0 / minus);
        }
        Ok(sum)
    }

    /// `Π(ω, ω′) = ½{Π₂(ω) + Π₂(ω′) − Π₁(ω) − Π₁(ω′)}`.
    pub fn pi_composite(&self, omega: f64, omega_prime: f64) -> Result<f64, ParamError> {
        Ok(0.5
            * (self.pi_k(2, omega)? + self.pi_k(2, omega_prime)?
                - self.pi_k(1, omega)?
                - self.pi_k(1, omega_prime)?))
    }

    /// Two-photon transition parameter
    /// `Π₂₁(ω) = Σ_j d₂ⱼdⱼ₁/ħ · (1/(ω_j2 + ω) + 1/(ω_j1 − ω))`.
    pub fn pi_21(&self, omega: f64) -> Result<Complex64, ParamError> {
        let mut sum = Complex64::new(0.0, 0.0);
        for j in 3..=self.levels.len() {
            let product = self.dipole(2, j)? * self.dipole(j, 1)?;
            if product.norm() == 0.0 {
                continue;
            }
            let plus = self.guard_denominator(j, 2, self.transition_frequency(j, 2)? + omega, omega)?;
            let minus =
                self.guard_denominator(j, 1, self.transition_frequency(j, 1)? - omega, omega)?;
            sum += product / self.hbar * (1.0 / plus + 1.0 / minus);
        }
        Ok(sum)
    }

    /// Level system with levels 1 and 2 exchanged.
    pub fn swap_resonant_levels(&self) -> Self {
        let mut levels = self.levels.clone();
        levels.swap(0, 1);
        let mut dipoles = self.dipoles.clone();
        dipoles.swap_rows(0, 1);
        dipoles.swap_columns(0, 1);
        Self {
            levels,
            dipoles,
            hbar: self.hbar,
            resonance_guard: self.resonance_guard,
        }
    }
}
