//! Deligne-Lusztig loci for unitary groups: flag enumeration over
//! quadratic extension towers, twisted Frobenius correspondences, and
//! principality tests for rational divisors on the rank-one variety.

use thiserror::Error;

pub mod divisor;
pub mod frobenius;
pub mod variety;

pub use divisor::{
    dual_principal, dual_principal_with_exponent, is_principal, is_principal_with_exponent,
    line_in_hyperplane, principal_form_equivalence, RationalDivisor,
};
pub use frobenius::{relative_frobenius, FrobeniusMap};
pub use variety::{
    count_points, dl_field, enumerate_points, enumerate_points_in, enumerate_points_unguarded,
    for_each_point, for_each_subspace, for_each_superspace, frob_pow, special_divisor_points,
    DLPoint, DLVarietyId, SpecialDivisor, Variant, GUARD_K, GUARD_N, GUARD_P,
};

#[derive(Debug, Error)]
pub enum DlError {
    #[error("rank parameters out of range: need n >= 1 and 1 <= i <= n")]
    ParamRange,
    #[error("enumeration exceeds the size guard (n <= {GUARD_N}, p <= {GUARD_P}, k <= {GUARD_K}); use the unguarded entry point to override")]
    SizeGuard,
    #[error("point does not lie on the source variety of this correspondence")]
    WrongVariant,
    #[error("divisor locus undefined at this rank")]
    RankRange,
    #[error("vector is zero or has the wrong length")]
    BadVector,
    #[error("locus must be rational over the quadratic subfield")]
    NotRational,
    #[error("divisor contexts differ")]
    ContextMismatch,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Math(#[from] exactmath::MathError),
}

pub type Result<T> = std::result::Result<T, DlError>;
