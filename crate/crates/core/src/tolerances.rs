//! Numeric tolerances used by the verification routines.

/// Relative tolerance for block-structure and closed-form matrix checks.
pub const BLOCK: f64 = 1e-10;
/// Frobenius tolerance for `U U† - I`.
pub const UNITARITY: f64 = 1e-12;
/// Tolerance of the Gaussian-integral inverse square root.
pub const QUADRATURE: f64 = 1e-8;
/// Minimum gap between the two branches, in units of `mc²`.
pub const BRANCH_GAP: f64 = 1e-6;
/// Relative tolerance for series-versus-closed-form and classical comparisons.
pub const SERIES: f64 = 1e-9;
