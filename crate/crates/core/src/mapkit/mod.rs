//! Morphisms `P¹ → P¹` given as coprime numerator/denominator pairs.
//!
//! Point sets are never split into individual algebraic numbers. A set of
//! points is a [`PointCluster`]: a monic squarefree polynomial whose roots are
//! the affine points, plus a flag for `∞`. Everything at infinity is reduced to
//! affine work through [`RationalMap::reparametrize`].

pub(crate) mod cluster;
mod map;
mod ramification;

pub use cluster::{FiberDivisor, PointCluster, ValueDivisor};
pub use map::{Chart, ProjectivePoint, RationalMap};
pub use ramification::{BranchEntry, RamificationProfile};

use crate::exactcore::AlgebraError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("numerator and denominator are both zero")]
    ZeroMap,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("constant map (degree 0)")]
    ConstantMap,
    #[error("duplicate point in a point list")]
    DuplicatePoint,
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, MapError>;
