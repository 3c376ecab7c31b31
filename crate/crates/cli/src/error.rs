use pencilforge_core::audit::AuditError;
use pencilforge_core::basechange::BaseChangeError;
use pencilforge_core::mapkit::MapError;
use pencilforge_core::pencil::PencilError;
use pencilforge_core::AlgebraError;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_SEMISTABLE: i32 = 3;
pub const EXIT_CONTRADICTION: i32 = 4;
pub const EXIT_ARITHMETIC: i32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    /// Degenerate pencils land here too: `φ = ψ` is a failed condition, not
    /// bad syntax.
    #[error("{0}")]
    NotSemistable(String),
    #[error("contradiction: {0}")]
    Contradiction(String),
    #[error("arithmetic guard: {0}")]
    Arithmetic(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::NotSemistable(_) => EXIT_NOT_SEMISTABLE,
            CliError::Contradiction(_) => EXIT_CONTRADICTION,
            CliError::Arithmetic(_) => EXIT_ARITHMETIC,
        }
    }

    pub fn from_algebra(e: AlgebraError) -> Self {
        match e {
            AlgebraError::ZeroDivisor { .. } | AlgebraError::DegreeCap { .. } | AlgebraError::DivisionByZero => {
                CliError::Arithmetic(e.to_string())
            }
            AlgebraError::NonMonicModulus
            | AlgebraError::ModulusNotSquarefree { .. }
            | AlgebraError::Arity { .. }
            | AlgebraError::FieldMismatch => CliError::Input(e.to_string()),
            AlgebraError::ZeroPolynomial(_) | AlgebraError::DegreeTooSmall { .. } => {
                CliError::Contradiction(e.to_string())
            }
        }
    }

    pub fn from_map(e: MapError) -> Self {
        match e {
            MapError::Algebra(a) => CliError::from_algebra(a),
            MapError::Inconsistency(_) => CliError::Contradiction(e.to_string()),
            MapError::ZeroMap | MapError::ZeroDenominator | MapError::ConstantMap | MapError::DuplicatePoint => {
                CliError::Input(e.to_string())
            }
        }
    }

    pub fn from_pencil(e: PencilError) -> Self {
        match e {
            PencilError::Map(m) => CliError::from_map(m),
            PencilError::Degenerate(ref p) => CliError::NotSemistable(format!(
                "degenerate pencil: phi = psi, coincidence polynomial {}",
                p.display("t")
            )),
            PencilError::NotSemistable(_) => CliError::NotSemistable(e.to_string()),
            PencilError::FieldMismatch | PencilError::BadDegrees(_) | PencilError::InvalidParameters(_) => {
                CliError::Input(e.to_string())
            }
            PencilError::Inconsistency(_) => CliError::Contradiction(e.to_string()),
        }
    }

    pub fn from_audit(e: AuditError) -> Self {
        CliError::Input(e.to_string())
    }

    pub fn from_basechange(e: BaseChangeError) -> Self {
        match e {
            BaseChangeError::Inconsistency(_) => CliError::Contradiction(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
