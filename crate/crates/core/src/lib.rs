//! Exact Foldy-Wouthuysen series for the Dirac and Dirac-Pauli Hamiltonians in static
//! homogeneous fields, their resummed closed forms, and numeric checks of the exactly
//! solvable block-diagonalization problems.

pub mod algebra;
pub mod closedform;
pub mod coeffs;
pub mod error;
pub mod golden;
pub mod kutzelnigg;
pub mod linalg;
pub mod matrixlab;
pub mod physics;
pub mod tolerances;

pub use algebra::{Field, GaussianRational, Monomial, OperatorPoly, Tail, UnitGrade};
pub use coeffs::{coeff, CoeffKind, Identity, SeriesKind};
pub use error::{FoldyError, ParseError};
pub use linalg::{CMat2, CMat4};
pub use physics::{FieldPoint, PhysicalParams, SpinVector};
