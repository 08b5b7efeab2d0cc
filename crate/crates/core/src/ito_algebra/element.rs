// Copyright 2026 The stark-qsde Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use num_complex::Complex64;

use super::{ItoError, SystemOperator};

/// The four basic increments of the vacuum quantum noise algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Increment {
    /// `dτ`
    Time,
    /// `dB(τ)`, annihilation
    Annihilation,
    /// `dB†(τ)`, creation
    Creation,
    /// `dΛ(τ)`, gauge (number) process
    Gauge,
}

impl Increment {
    pub const ALL: [Increment; 4] = [
        Increment::Time,
        Increment::Annihilation,
        Increment::Creation,
        Increment::Gauge,
    ];

    /// Product of two increments in the vacuum Ito table, or `None` when it
    /// vanishes.
    pub fn product(self, rhs: Increment) -> Option<Increment> {
        use Increment::*;
        match (self, rhs) {
            (Gauge, Gauge) => Some(Gauge),
            (Gauge, Creation) => Some(Creation),
            (Annihilation, Gauge) => Some(Annihilation),
            (Annihilation, Creation) => Some(Time),
            _ => None,
        }
    }

    pub fn adjoint(self) -> Increment {
        match self {
            Increment::Annihilation => Increment::Creation,
            Increment::Creation => Increment::Annihilation,
            other => other,
        }
    }
}

impl fmt::Display for Increment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Increment::Time => "dτ",
            Increment::Annihilation => "dB",
            Increment::Creation => "dB†",
            Increment::Gauge => "dΛ",
        })
    }
}

/// `c_dt·dτ + c_dB·dB + c_dB†·dB† + c_dΛ·dΛ`, kept in reduced form.
///
/// System-operator coefficients commute with the increments, so every
/// element of the algebra generated by the increments reduces to this shape.
#[derive(Debug, Clone, PartialEq)]
pub struct ItoElement {
    dt: SystemOperator,
    db: SystemOperator,
    db_dag: SystemOperator,
    dlambda: SystemOperator,
}

impl ItoElement {
    pub fn new(
        dt: SystemOperator,
        db: SystemOperator,
        db_dag: SystemOperator,
        dlambda: SystemOperator,
    ) -> Result<Self, ItoError> {
        let dim = dt.dim();
        for other in [&db, &db_dag, &dlambda] {
            if other.dim() != dim {
                return Err(ItoError::DimensionMismatch {
                    left: dim,
                    right: other.dim(),
                });
            }
        }
        Ok(Self {
            dt,
            db,
            db_dag,
            dlambda,
        })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dt: SystemOperator::zeros(dim),
            db: SystemOperator::zeros(dim),
            db_dag: SystemOperator::zeros(dim),
            dlambda: SystemOperator::zeros(dim),
        }
    }

    /// `coeff · increment`.
    pub fn single(increment: Increment, coeff: SystemOperator) -> Self {
        let mut out = Self::zero(coeff.dim());
        *out.channel_mut(increment) = coeff;
        out
    }

    /// The bare increment with identity coefficient.
    pub fn basis(increment: Increment, dim: usize) -> Self {
        Self::single(increment, SystemOperator::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.dt.dim()
    }

    pub fn channel(&self, increment: Increment) -> &SystemOperator {
        match increment {
            Increment::Time => &self.dt,
            Increment::Annihilation => &self.db,
            Increment::Creation => &self.db_dag,
            Increment::Gauge => &self.dlambda,
        }
    }

    fn channel_mut(&mut self, increment: Increment) -> &mut SystemOperator {
        match increment {
            Increment::Time => &mut self.dt,
            Increment::Annihilation => &mut self.db,
            Increment::Creation => &mut self.db_dag,
            Increment::Gauge => &mut self.dlambda,
        }
    }

    pub fn dt(&self) -> &SystemOperator {
        &self.dt
    }

    pub fn db(&self) -> &SystemOperator {
        &self.db
    }

    pub fn db_dag(&self) -> &SystemOperator {
        &self.db_dag
    }

    pub fn dlambda(&self) -> &SystemOperator {
        &self.dlambda
    }

    /// Ito product `self · rhs`, reduced with the vacuum table.
    ///
    /// Coefficients compose left to right, so the `dτ` channel of the
    /// product is `self.dB · rhs.dB†`.
    pub fn multiply(&self, rhs: &ItoElement) -> Result<ItoElement, ItoError> {
        if self.dim() != rhs.dim() {
            return Err(ItoError::DimensionMismatch {
                left: self.dim(),
                right: rhs.dim(),
            });
        }
        Ok(ItoElement {
            dt: &self.db * &rhs.db_dag,
            db: &self.db * &rhs.dlambda,
            db_dag: &self.dlambda * &rhs.db_dag,
            dlambda: &self.dlambda * &rhs.dlambda,
        })
    }

    pub fn try_add(&self, rhs: &ItoElement) -> Result<ItoElement, ItoError> {
        if self.dim() != rhs.dim() {
            return Err(ItoError::DimensionMismatch {
                left: self.dim(),
                right: rhs.dim(),
            });
        }
        Ok(ItoElement {
            dt: &self.dt + &rhs.dt,
            db: &self.db + &rhs.db,
            db_dag: &self.db_dag + &rhs.db_dag,
            dlambda: &self.dlambda + &rhs.dlambda,
        })
    }

    pub fn scale(&self, factor: Complex64) -> ItoElement {
        ItoElement {
            dt: self.dt.scale(factor),
            db: self.db.scale(factor),
            db_dag: self.db_dag.scale(factor),
            dlambda: self.dlambda.scale(factor),
        }
    }

    /// Hermitian conjugate: `(c dB)† = c† dB†`, `dτ` and `dΛ` are self-adjoint.
    pub fn adjoint(&self) -> ItoElement {
        ItoElement {
            dt: self.dt.adjoint(),
            db: self.db_dag.adjoint(),
            db_dag: self.db.adjoint(),
            dlambda: self.dlambda.adjoint(),
        }
    }

    /// Largest absolute entry over all four coefficient matrices.
    pub fn max_norm(&self) -> f64 {
        Increment::ALL
            .iter()
            .map(|&inc| self.channel(inc).max_norm())
            .fold(0.0, f64::max)
    }

    pub fn max_distance(&self, other: &ItoElement) -> f64 {
        Increment::ALL
            .iter()
            .map(|&inc| self.channel(inc).max_distance(other.channel(inc)))
            .fold(0.0, f64::max)
    }

    pub fn is_zero(&self) -> bool {
        Increment::ALL.iter().all(|&inc| self.channel(inc).is_zero())
    }
}
