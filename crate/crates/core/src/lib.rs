//! Exact dimensions of higher secant varieties of Grassmannians in their
//! Plücker embedding.
//!
//! Two independent routes compute the same number:
//!
//! * [`secant::terracini_dim`] spans the tangent spaces at `s` points of the
//!   Grassmannian inside `Λ^k V`;
//! * [`secant::apolar_dim`] intersects the degree `n+1-k` pieces of the
//!   squared ideals of the `s` subspaces in `Λ(V)` and subtracts.
//!
//! All arithmetic is exact, either over a large prime field or over the
//! rationals. [`monomial`] holds the closed forms for coordinate-block
//! configurations together with a brute-force counting oracle.

pub mod error;
pub mod exactlinalg;
pub mod exterior;
pub mod grassmann;
pub mod monomial;
pub mod secant;
pub mod verify;

pub use error::{Error, Result};
pub use exactlinalg::{Field, FieldMode, Matrix, PrimeField, RationalField};
pub use exterior::{ExtMonomial, ExtVector};
pub use grassmann::{GrassmannParams, VSubspace};
pub use secant::{Configuration, SecantReport};
