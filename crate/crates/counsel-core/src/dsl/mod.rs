//! The textual rulebook language.
//!
//! A rulebook file names its category set, optionally declares custom
//! curves, and lists rules grouped by field:
//!
//! ```text
//! categories table1-fitted
//!
//! field Engineering {
//!   rule E1: if Mathematics is Excellent weight 1/3
//!            and Physics is Excellent weight 1/3
//!            and Chemistry is Excellent weight 1/3
//!            then Excellent
//! }
//! ```
//!
//! Keywords are case-insensitive, `#` starts a line comment, and names with
//! spaces (like `"Home Science"`) are double-quoted. Weights are decimals
//! or exact fractions such as `1/3`. Custom curves replace the preset line:
//!
//! ```text
//! categories custom
//! category Low ramp 0 50 cutoff 60
//! category High ramp 55 90 cutoff none
//! ```
//!
//! [`parse_rulebook`] recovers at statement boundaries so one pass reports
//! as many problems as possible; a parse never yields both a rulebook and
//! errors. [`format_rulebook`] emits a canonical form that parses back to
//! an equal rulebook.

mod format;
mod lexer;
mod parser;

use alloc::string::String;
use alloc::vec::Vec;

use crate::rules::Rulebook;
use crate::Severity;

pub use format::{format_rulebook, format_weight};

/// A 1-based position in rulebook text. `length` is in characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub line: u32,
    pub column: u32,
    pub length: u32,
}

impl core::fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// A problem found while parsing or validating rulebook text.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseDiagnostic {
    pub severity: Severity,
    pub message: String,
    pub span: SourceSpan,
}

impl core::fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}: {} (at {})", self.severity, self.message, self.span)
    }
}

/// Everything a parse produced: the rulebook when no errors occurred, plus
/// all diagnostics including warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseOutcome {
    pub rulebook: Option<Rulebook>,
    pub diagnostics: Vec<ParseDiagnostic>,
}

impl ParseOutcome {
    pub fn has_errors(&self) -> bool {
        self.diagnostics
            .iter()
            .any(|d| d.severity == Severity::Error)
    }
}

/// Parses rulebook text, keeping warnings alongside the result.
pub fn parse_rulebook_full(text: &str) -> ParseOutcome {
    parser::parse(text)
}

/// Parses rulebook text into a validated [`Rulebook`].
///
/// On failure every diagnostic discovered is returned; a partial rulebook
/// is never handed out alongside errors. A successful parse always passes
/// [`crate::rules::validate_rulebook`] cleanly.
pub fn parse_rulebook(text: &str) -> Result<Rulebook, Vec<ParseDiagnostic>> {
    let outcome = parser::parse(text);
    match outcome.rulebook {
        Some(rulebook) if !outcome.has_errors() => Ok(rulebook),
        _ => Err(outcome.diagnostics),
    }
}
