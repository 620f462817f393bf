//! Normal-form algebra of operators in a static homogeneous field, kept to first
//! order in the field strengths.

pub mod eval;
pub mod grade;
pub mod poly;
pub mod scalar;
pub mod tail;

pub use grade::UnitGrade;
pub use poly::{parse_term, rational, OperatorPoly, OperatorTerm, TermRecord};
pub use scalar::GaussianRational;
pub use tail::{Field, Monomial, Tail};
