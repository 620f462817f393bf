//! Physical constants and evaluation points shared by the numeric modules.

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::error::FoldyError;

/// Mass, speed of light, charge, reduced Planck constant and anomalous moment `μ'`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalParams {
    pub m: f64,
    pub c: f64,
    pub q: f64,
    pub hbar: f64,
    pub mu_prime: f64,
}

impl Default for PhysicalParams {
    fn default() -> Self {
        PhysicalParams {
            m: 1.0,
            c: 1.0,
            q: 1.0,
            hbar: 1.0,
            mu_prime: 0.0,
        }
    }
}

impl PhysicalParams {
    pub fn validate(&self) -> Result<(), FoldyError> {
        let finite = [self.m, self.c, self.q, self.hbar, self.mu_prime]
            .iter()
            .all(|v| v.is_finite());
        if !finite {
            return Err(FoldyError::InvalidParams("non-finite parameter".into()));
        }
        if self.m < 0.0 {
            return Err(FoldyError::InvalidParams("m must be >= 0".into()));
        }
        if self.c <= 0.0 {
            return Err(FoldyError::InvalidParams("c must be > 0".into()));
        }
        if self.hbar <= 0.0 {
            return Err(FoldyError::InvalidParams("hbar must be > 0".into()));
        }
        Ok(())
    }

    /// Anomalous gyromagnetic ratio `γ'_m = 2μ'/ħ`.
    pub fn gamma_m_prime(&self) -> f64 {
        2.0 * self.mu_prime / self.hbar
    }

    /// Total gyromagnetic ratio `γ_m = γ'_m + q/(mc)`.
    pub fn gamma_m(&self) -> f64 {
        self.gamma_m_prime() + self.q / (self.m * self.c)
    }

    /// `μ'' = c μ'`.
    pub fn mu_double_prime(&self) -> f64 {
        self.c * self.mu_prime
    }

    pub fn rest_energy(&self) -> f64 {
        self.m * self.c * self.c
    }
}

/// Kinematic momentum, homogeneous fields and potential value at one point.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct FieldPoint {
    pub pi: Vector3<f64>,
    pub e: Vector3<f64>,
    pub b: Vector3<f64>,
    pub phi: f64,
}

impl FieldPoint {
    pub fn new(pi: [f64; 3], e: [f64; 3], b: [f64; 3], phi: f64) -> Self {
        FieldPoint {
            pi: Vector3::from(pi),
            e: Vector3::from(e),
            b: Vector3::from(b),
            phi,
        }
    }

    /// `(π, E, B) → (-π, E, B)` with φ kept.
    pub fn with_pi_reversed(&self) -> Self {
        FieldPoint {
            pi: -self.pi,
            ..*self
        }
    }
}

/// Classical spin vector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinVector {
    pub s: Vector3<f64>,
}

impl SpinVector {
    /// Spin of length `ħ/2` along `dir`.
    pub fn along(hbar: f64, dir: Vector3<f64>) -> Self {
        SpinVector {
            s: dir.normalize() * (0.5 * hbar),
        }
    }
}
