//! Exact arithmetic kernel: small finite fields with Frobenius, truncated
//! Witt rings with the sigma involution, echelon linear algebra over fields,
//! Howell-form lattices over chain rings, and exact rational/prime-field
//! coefficients for kernel computations.

pub mod dense;
pub mod error;
pub mod field;
pub mod fq;
pub mod lattice;
pub mod sparse;
pub mod subspace;
pub mod witt;

pub use error::{MathError, Result};
pub use field::{rat_int, rat_p_pow, Coeffs, FlField, QField, Rat};
pub use fq::{FiniteField, Fq};
pub use lattice::{howell_rows, kernel_mod, projective_reps_n, smith_vals, WittLattice};
pub use subspace::{kernel, solve, FqMat, Subspace};
pub use witt::{WittElem, WittRing};
