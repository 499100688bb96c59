//! Core engine for fuzzy career guidance.
//!
//! Phase 1 evaluates a student profile against a rulebook of weighted fuzzy
//! rules: each subject score is mapped through ramp/plateau membership curves
//! ([`fuzzy`]), rules combine the resulting grades as weighted sums
//! ([`engine`]), and per-field category scores are aggregated and ranked.
//! Phase 2 maps a recommended field to courses, institutes, and jobs by
//! composing finite relations ([`relation`]).
//!
//! Rulebooks can be authored in a small textual language (see [`dsl`]) or
//! taken from [`builtin_rulebook`], which ships the reference rules for
//! Engineering, Medical, and Hospitality.
//!
//! The crate is `no_std` and only needs `alloc`; all values are immutable
//! after construction and every operation is a pure function.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod ident;

pub mod builtin;
pub mod dsl;
pub mod engine;
pub mod fuzzy;
pub mod profile;
pub mod relation;
pub mod rules;

pub use builtin::builtin_rulebook;
pub use dsl::{
    format_rulebook, parse_rulebook, parse_rulebook_full, ParseDiagnostic, ParseOutcome,
    SourceSpan,
};
pub use engine::{
    aggregate_category, assess_profile, evaluate_rule, explain_assessment, rank_fields,
    Contribution, EvalError, Explanation, FieldAssessment, Ranking, RuleScore,
};
pub use fuzzy::{
    preset_category_set, sample_membership, CategoryLabel, CategorySet, FuzzyError,
    MembershipFunction, MembershipGrade, Score,
};
pub use profile::{Profile, ProfileError, SubjectId};
pub use relation::{
    EntityId, EntityKind, FiniteRelation, InstituteRecord, KbDiagnostic, KnowledgeBase,
    Recommendation, RelationError,
};
pub use rules::{
    validate_rulebook, Clause, FieldName, Rule, Rulebook, RulebookDiagnostic,
    WEIGHT_SUM_TOLERANCE,
};

/// Severity of a diagnostic produced by a validator or the rulebook parser.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

impl core::fmt::Display for Severity {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Severity::Warning => f.write_str("warning"),
            Severity::Error => f.write_str("error"),
        }
    }
}

/// Rounds to two decimals, halves away from zero.
///
/// All printed grades use this rounding; internal arithmetic stays at full
/// precision. Implemented by hand because `f64::round` is not available in
/// `core`; the cast is safe for the score/grade magnitudes this crate deals
/// in.
pub fn round2(value: f64) -> f64 {
    let scaled = value * 100.0;
    let shifted = if scaled < 0.0 { scaled - 0.5 } else { scaled + 0.5 };
    (shifted as i64) as f64 / 100.0
}
