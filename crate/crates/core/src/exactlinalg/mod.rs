//! Exact integer linear algebra: Smith normal form, integer solving and
//! abelian-group invariants of cokernels and subquotients.
//!
//! Everything here works with arbitrary-precision integers. Rational
//! arithmetic appears only in [`rational_rank`], used as an independent
//! cross-check of the Smith rank.

mod groups;
mod matrix;
mod rational;
mod smith;

pub use groups::{
    cokernel_invariants, is_group_isomorphism, is_identity_modulo, is_unimodular, kernel_basis, solve_integer, subquotient_invariants,
    unimodular_inverse, AbelianGroupInvariants, Subquotient,
};
pub(crate) use groups::reduce_mod;
pub use matrix::IntMatrix;
pub use rational::rational_rank;
pub use smith::{smith_normal_form, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("vector is not in the lattice")]
    NotInLattice,
    #[error("matrix is not invertible over the integers")]
    NotUnimodular,
}
