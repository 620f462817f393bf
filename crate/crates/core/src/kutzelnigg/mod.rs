//! Order-by-order solution of the block-diagonalization condition, the closed forms of
//! its coefficients, and assembly of the transformed Hamiltonians.
//!
//! Every series is in powers of `1/c`: entry `n` multiplies `c^{-n}`. Grades inside an
//! entry may carry further powers of `c` (through `qħ/c` from the commutator of
//! kinematic momenta); they are kept in the grade and never moved between entries.

pub mod hamiltonian;
pub mod recursion;
pub mod series;
pub mod theorems;

pub use hamiltonian::{
    assemble_cal_hfw, assemble_hfw, conjugate_cal_hfw, conjugate_hfw, lemma_commutator,
    lower_block, lower_block_direct, xdag_x, FwHamiltonian,
};
pub use recursion::{dirac_series, pauli_series};
pub use series::{SeriesLabel, SeriesTable};
pub use theorems::{cal_hfw_taylor, hfw_taylor, theorem_closed_form, Theorem};
