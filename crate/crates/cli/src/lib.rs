//! Command-line front end: file formats, reports and command dispatch for
//! the `pencilforge` binary.

pub mod error;
pub mod report;
pub mod run;
pub mod schema;

pub use error::CliError;
pub use report::ReportDocument;
pub use run::{run, Cli, Command, Outcome};
pub use schema::{FibrationFile, PencilFile};
