//! Pencils of hyperelliptic curves from a pair of morphisms `φ, ψ: P¹ → P¹`.
//!
//! The double cover of `P¹ × P¹` branched along `Γ_φ + Γ_ψ` is fibered over
//! the common target line. Its fiber over `y` is the double cover of the
//! source line branched at `φ⁻¹(y) + ψ⁻¹(y)`, a curve of genus
//! `g = (deg φ + deg ψ − 2)/2`. This module checks when that pencil is
//! semistable, classifies its singular fibers and computes its invariants.

mod certificate;
mod coincidence;
mod example;
mod spec;
mod table;

pub use certificate::{semistability_verify, CheckResult, SemistabilityCertificate};
pub use coincidence::{coincidence_analysis, CoincidenceReport};
pub use example::{build_genus2_example, example_cubic, ExampleMode};
pub use spec::{DeclaredSet, PencilSpec};
pub use table::{pencil_invariants, singular_fiber_table, FiberRow, SingularFiberTable};

use crate::exactcore::{AlgebraError, Polynomial};
use crate::mapkit::MapError;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PencilError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("phi and psi coincide identically; the coincidence polynomial is {0:?}")]
    Degenerate(Polynomial),
    #[error("phi and psi must be defined over the same field")]
    FieldMismatch,
    #[error("deg phi + deg psi = {0} must be even and at least 4")]
    BadDegrees(usize),
    #[error("semistability conditions fail: {0}")]
    NotSemistable(String),
    #[error("invalid example parameters: {0}")]
    InvalidParameters(String),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
}

impl From<AlgebraError> for PencilError {
    fn from(e: AlgebraError) -> Self {
        PencilError::Map(MapError::Algebra(e))
    }
}

impl PencilError {
    /// The arithmetic error underneath, if that is what this is.
    pub fn algebra(&self) -> Option<&AlgebraError> {
        match self {
            PencilError::Map(MapError::Algebra(e)) => Some(e),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, PencilError>;
