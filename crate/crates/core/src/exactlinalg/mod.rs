//! Exact scalars and dense linear algebra over them.
//!
//! Elimination is plain Gaussian over F_p and fraction-free (Bareiss) when
//! only the rank is needed over Q.

mod field;
mod matrix;

pub use field::{
    is_prime, Field, FieldMode, PrimeField, RationalField, ALT_PRIME, MERSENNE_61,
    RATIONAL_SAMPLE_BOUND,
};
pub use matrix::{contains, intersect_subspaces, nullspace_basis, rank, Matrix};
