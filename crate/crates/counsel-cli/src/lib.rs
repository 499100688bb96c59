//! File formats, report rendering, and the `counsel` command line.
//!
//! Student profiles and knowledge bases travel as JSON, rulebooks as
//! `.frules` text, and reports either as two-decimal text tables or as
//! full-precision JSON. Exit codes follow one contract everywhere:
//! 0 success, 1 parse/validation errors, 2 I/O or usage errors.

pub mod aliases;
pub mod cli;
pub mod error;
pub mod kb_io;
pub mod profiles;
pub mod report;

pub use aliases::SubjectAliases;
pub use cli::run;
pub use error::CliError;
pub use kb_io::{kb_diagnostics, load_kb, save_kb};
pub use profiles::{load_profiles, ProfileDocument};
pub use report::{
    membership_csv, render_recommendation, render_report, Report, ReportFormat, StudentReport,
};
