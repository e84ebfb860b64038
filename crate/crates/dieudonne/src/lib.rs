pub mod modify;
pub mod module;
pub mod semilinear;

use exactmath::MathError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DieudonneError {
    #[error("rank must be at least 2")]
    RankRange,
    #[error("label out of range: need 1 <= a,b <= n")]
    ParamRange,
    #[error("matrix shape mismatch")]
    Shape,
    #[error("matrix is singular")]
    Singular,
    #[error("kernel-image relations fail; not a reduced module")]
    Invalid,
    #[error("no standard invariant matches; input lies outside the classified family")]
    Unclassifiable,
    #[error("lattice pair is not stable under F and V")]
    Unstable,
    #[error("signature bookkeeping left the range [0, n]")]
    SignatureRange,
    #[error(transparent)]
    Math(#[from] MathError),
}

pub type Result<T> = std::result::Result<T, DieudonneError>;

pub use modify::{modify, WittDieudonne};
pub use module::{
    canonical_filtration, eo_classify, standard_module, standard_module_over,
    supersingular_chain_exists, EOSignature, GradedSubspace, ModPDieudonne,
};
pub use semilinear::{invert_mat, linear_preimage, Semilinear};
