// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

use super::{LevelSystem, ParamError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResonanceKind {
    OneQuantum,
    TwoQuantum,
}

impl ResonanceKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ResonanceKind::OneQuantum => "one-quantum",
            ResonanceKind::TwoQuantum => "two-quantum",
        }
    }
}

impl std::str::FromStr for ResonanceKind {
    type Err = ParamError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "one-quantum" => Ok(ResonanceKind::OneQuantum),
            "two-quantum" => Ok(ResonanceKind::TwoQuantum),
            other => Err(ParamError::InvalidResonance(format!(
                "unknown resonance kind {other:?} (expected one-quantum or two-quantum)"
            ))),
        }
    }
}

/// Cavity data for the Raman configuration `Ω_r − ω_c ≈ ω₂₁`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cavity {
    pub omega_c: f64,
    pub delta_omega_c: f64,
    /// atom–cavity coupling; `None` means `Γ·Δω_c`
    pub g: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResonanceSpec {
    pub kind: ResonanceKind,
    pub omega21: f64,
    pub omega_r: f64,
    /// flat field coupling `Γ`
    pub coupling: f64,
    /// required for two-quantum
    pub cavity: Option<Cavity>,
}

/// Sanity thresholds. These are conventions, not physics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// maximum relative detuning from resonance
    pub detuning: f64,
    /// maximum `Δω_c/Ω_r`
    pub cavity_width_ratio: f64,
    /// significance ratio above which the Stark channel counts as essential
    pub stark_significance: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            detuning: 0.1,
            cavity_width_ratio: 0.1,
            stark_significance: 10.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneQuantumMapping {
    pub chi: f64,
    pub eta: f64,
    /// `|Π₂(ω₂₁) − Π₁(ω₂₁)| / (2|d₁₂|²/(ħω₂₁))`
    pub significance: f64,
    pub stark_significant: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoQuantumMapping {
    pub chi: f64,
    pub eta: f64,
    /// `|Π₂₁(Ω_r)|`
    pub pi_21: f64,
    /// `Π(Ω_r, Ω_r) = Π₂(Ω_r) − Π₁(Ω_r)`
    pub stark_sum: f64,
    /// `η/χ`, NaN when `χ = 0`
    pub eta_over_chi: f64,
    /// `|η| ≥ 1`
    pub eta_order_unity: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Mapping {
    OneQuantum(OneQuantumMapping),
    TwoQuantum(TwoQuantumMapping),
}

impl Mapping {
    pub fn chi(&self) -> f64 {
        match self {
            Mapping::OneQuantum(m) => m.chi,
            Mapping::TwoQuantum(m) => m.chi,
        }
    }

    pub fn eta(&self) -> f64 {
        match self {
            Mapping::OneQuantum(m) => m.eta,
            Mapping::TwoQuantum(m) => m.eta,
        }
    }
}

fn positive(name: &str, value: f64) -> Result<(), ParamError> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(ParamError::InvalidResonance(format!("{name} must be positive, got {value}")))
    }
}

/// `χ = Γ|d₁₂|/ħ` and `η = χ²(Π₂(ω₂₁) − Π₁(ω₂₁)) / (2|d₁₂|²/(ħω₂₁))`.
///
/// The phase of `d₁₂` is absorbed into `|E₂⟩`, so only its modulus enters.
pub fn map_one_quantum(
    spec: &ResonanceSpec,
    system: &LevelSystem,
    thresholds: &Thresholds,
) -> Result<OneQuantumMapping, ParamError> {
    if spec.kind != ResonanceKind::OneQuantum {
        return Err(ParamError::InvalidResonance("expected a one-quantum resonance".into()));
    }
    positive("omega21", spec.omega21)?;
    positive("omega_r", spec.omega_r)?;
    if !spec.coupling.is_finite() {
        return Err(ParamError::InvalidResonance("coupling must be finite".into()));
    }
    let detuning = (spec.omega_r - spec.omega21).abs() / spec.omega21;
    if detuning > thresholds.detuning {
        return Err(ParamError::OffResonance {
            detuning,
            limit: thresholds.detuning,
        });
    }
    let d12 = system.dipole(1, 2)?.norm();
    if d12 == 0.0 {
        return Err(ParamError::ForbiddenTransition);
    }
    let hbar = system.hbar();
    let chi = spec.coupling * d12 / hbar;
    let stark = system.pi_k(2, spec.omega21)? - system.pi_k(1, spec.omega21)?;
    let scale = 2.0 * d12 * d12 / (hbar * spec.omega21);
    let significance = stark.abs() / scale;
    Ok(OneQuantumMapping {
        chi,
        eta: chi * chi * stark / scale,
        significance,
        stark_significant: significance > thresholds.stark_significance,
    })
}

/// `χ = gΓ|Π₂₁(Ω_r)|/ħ` and `η = χ·Π(Ω_r, Ω_r)·Ω_r / (|Π₂₁(Ω_r)|·Δω_c)`.
///
/// The Stark numerator is taken as the composite `Π₂ − Π₁` at `Ω_r`, and the
/// second denominator of `Π₂₁` uses `ω_j1` (see [`LevelSystem::pi_21`]).
/// `g` defaults to `Γ·Δω_c`.
pub fn map_two_quantum(
    spec: &ResonanceSpec,
    system: &LevelSystem,
    thresholds: &Thresholds,
) -> Result<TwoQuantumMapping, ParamError> {
    if spec.kind != ResonanceKind::TwoQuantum {
        return Err(ParamError::InvalidResonance("expected a two-quantum resonance".into()));
    }
    let cavity = spec
        .cavity
        .ok_or_else(|| ParamError::InvalidResonance("two-quantum resonance needs cavity data".into()))?;
    positive("omega21", spec.omega21)?;
    positive("omega_r", spec.omega_r)?;
    positive("delta_omega_c", cavity.delta_omega_c)?;
    if !spec.coupling.is_finite() || !cavity.omega_c.is_finite() {
        return Err(ParamError::InvalidResonance("coupling and omega_c must be finite".into()));
    }
    let detuning = (spec.omega_r - cavity.omega_c - spec.omega21).abs() / spec.omega21;
    if detuning > thresholds.detuning {
        return Err(ParamError::OffResonance {
            detuning,
            limit: thresholds.detuning,
        });
    }
    let width = cavity.delta_omega_c / spec.omega_r;
    if width > thresholds.cavity_width_ratio {
        return Err(ParamError::BroadCavity {
            ratio: width,
            limit: thresholds.cavity_width_ratio,
        });
    }
    let pi_21 = system.pi_21(spec.omega_r)?.norm();
    if pi_21 == 0.0 {
        return Err(ParamError::VanishingTwoPhoton);
    }
    let g = cavity.g.unwrap_or(spec.coupling * cavity.delta_omega_c);
    let chi = g * spec.coupling * pi_21 / system.hbar();
    let stark_sum = system.pi_composite(spec.omega_r, spec.omega_r)?;
    let eta = chi * stark_sum * spec.omega_r / (pi_21 * cavity.delta_omega_c);
    Ok(TwoQuantumMapping {
        chi,
        eta,
        pi_21,
        stark_sum,
        eta_over_chi: if chi == 0.0 { f64::NAN } else { eta / chi },
        eta_order_unity: eta.abs() >= 1.0,
    })
}

/// Dispatches on `spec.kind`.
pub fn map_params(
    spec: &ResonanceSpec,
    system: &LevelSystem,
    thresholds: &Thresholds,
) -> Result<Mapping, ParamError> {
    match spec.kind {
        ResonanceKind::OneQuantum => map_one_quantum(spec, system, thresholds).map(Mapping::OneQuantum),
        ResonanceKind::TwoQuantum => map_two_quantum(spec, system, thresholds).map(Mapping::TwoQuantum),
    }
}
