pub mod estimate;
pub mod isocrystal;
pub mod polygon;
pub mod slopezero;

use exactmath::MathError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NewtonError {
    #[error("rank must be at least 2")]
    RankRange,
    #[error("label out of range: need 1 <= a,b <= n")]
    ParamRange,
    #[error("permutation or valuation data has the wrong shape")]
    Shape,
    #[error("coefficient valuation above 1; p F^{{-1}} is not integral")]
    NonIntegralDual,
    #[error("negative coefficient valuation; F does not preserve the standard lattice")]
    NonIntegral,
    #[error("iterate valuations reached the working precision")]
    Precision,
    #[error("polygons have different width or total rise")]
    Endpoints,
    #[error("lattice chain left the window before stabilizing")]
    NonStabilizing,
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Module(#[from] dieudonne::DieudonneError),
}

pub type Result<T> = std::result::Result<T, NewtonError>;

pub use estimate::{hasse_criteria, lambda_max, lambda_min, HasseCriteria, SlopeEstimate};
pub use isocrystal::{Label, MonomialIsocrystal};
pub use polygon::{
    newton_strata, polygon_dominance, poset_cover_edges, Dominance, NewtonPolygon, NewtonStratum,
    StratumLabel,
};
pub use slopezero::{SlopeZeroCalculus, SlopeZeroLattice};
