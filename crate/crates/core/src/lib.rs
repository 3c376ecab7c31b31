//! Exact verification of semistable pencils of curves built as double covers
//! of `P¹ × P¹` branched along the union of two graphs, together with an
//! exact-arithmetic audit of the numerical inequalities satisfied by
//! semistable fibrations.
//!
//! The layers, bottom up:
//!
//! * [`exactcore`]: rationals, number fields, univariate polynomials.
//! * [`mapkit`]: morphisms `P¹ → P¹`, fibers, ramification.
//! * [`pencil`]: the two-map construction, its semistability certificate
//!   and singular fiber table.
//! * [`audit`] and [`basechange`]: inequalities on abstract fibration data.

pub mod audit;
pub mod basechange;
pub mod exactcore;
pub mod mapkit;
pub mod pencil;

pub use audit::{AdeKind, AuditVerdict, FibrationData, Relation, SurfaceChernData};
pub use basechange::{BaseChangeParams, StrictVojtaCertificate};
pub use exactcore::{AlgebraError, FieldElement, NumberField, Polynomial, Rational};
pub use mapkit::{PointCluster, ProjectivePoint, RationalMap};
pub use pencil::{PencilSpec, SemistabilityCertificate, SingularFiberTable};
