//! Weighted fuzzy rules and rulebooks.
//!
//! A [`Rule`] scores one field/category pair as the weighted sum of
//! membership grades of its antecedent clauses; a [`Rulebook`] bundles the
//! rules with the category set they refer to. Checked constructors enforce
//! the invariants; [`Rule::from_parts`] and [`Rulebook::from_parts`] build
//! unchecked values so that [`validate_rulebook`] can inspect (and report
//! on) structurally complete but invalid rulebooks.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use thiserror::Error;

use crate::fuzzy::{CategoryLabel, CategorySet};
use crate::ident::Ident;
use crate::profile::SubjectId;

/// Clause weights of a rule must sum to 1 within this tolerance, which
/// accommodates thirds written as decimals or fractions.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RuleError {
    #[error("clause weight {0} must lie in (0, 1]")]
    WeightOutOfRange(f64),
    #[error("rule id must not be empty")]
    EmptyRuleId,
    #[error("field name must not be empty")]
    EmptyFieldName,
    #[error("rule `{0}` has no clauses")]
    NoClauses(String),
    #[error("rule `{rule_id}` mentions subject `{subject}` more than once")]
    DuplicateSubject { rule_id: String, subject: String },
    #[error("rule `{rule_id}` clause weights sum to {sum}, expected 1")]
    WeightSum { rule_id: String, sum: f64 },
}

/// The name of a career field such as Engineering. Compared
/// case-insensitively with whitespace collapsed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldName(Ident);

impl FieldName {
    pub fn new(name: &str) -> Result<Self, RuleError> {
        Ident::new(name).map(Self).ok_or(RuleError::EmptyFieldName)
    }

    pub fn as_str(&self) -> &str {
        self.0.display()
    }
}

impl core::fmt::Display for FieldName {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        self.0.fmt(f)
    }
}

/// One antecedent term: "subject is category", with its weight in the rule's
/// weighted sum.
#[derive(Debug, Clone, PartialEq)]
pub struct Clause {
    subject: SubjectId,
    category: CategoryLabel,
    weight: f64,
}

impl Clause {
    pub fn new(subject: SubjectId, category: CategoryLabel, weight: f64) -> Result<Self, RuleError> {
        if !(weight > 0.0 && weight <= 1.0) {
            return Err(RuleError::WeightOutOfRange(weight));
        }
        Ok(Self {
            subject,
            category,
            weight,
        })
    }

    pub fn subject(&self) -> &SubjectId {
        &self.subject
    }

    pub fn category(&self) -> &CategoryLabel {
        &self.category
    }

    pub fn weight(&self) -> f64 {
        self.weight
    }
}

/// A weighted fuzzy inference rule: if all clauses (weighted), then
/// `field` is `consequent`.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    id: String,
    field: FieldName,
    clauses: Vec<Clause>,
    consequent: CategoryLabel,
}

impl Rule {
    /// Checked constructor: requires a nonempty id, at least one clause,
    /// pairwise-distinct clause subjects, and weights summing to 1 within
    /// [`WEIGHT_SUM_TOLERANCE`].
    pub fn new(
        id: &str,
        field: FieldName,
        clauses: Vec<Clause>,
        consequent: CategoryLabel,
    ) -> Result<Self, RuleError> {
        let id = id.trim();
        if id.is_empty() {
            return Err(RuleError::EmptyRuleId);
        }
        if clauses.is_empty() {
            return Err(RuleError::NoClauses(id.to_string()));
        }
        for (i, clause) in clauses.iter().enumerate() {
            if clauses[..i].iter().any(|c| c.subject == clause.subject) {
                return Err(RuleError::DuplicateSubject {
                    rule_id: id.to_string(),
                    subject: clause.subject.as_str().to_string(),
                });
            }
        }
        let sum: f64 = clauses.iter().map(Clause::weight).sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(RuleError::WeightSum {
                rule_id: id.to_string(),
                sum,
            });
        }
        Ok(Self::from_parts(id, field, clauses, consequent))
    }

    /// Unchecked constructor for building possibly-invalid rules that
    /// [`validate_rulebook`] will diagnose.
    pub fn from_parts(
        id: &str,
        field: FieldName,
        clauses: Vec<Clause>,
        consequent: CategoryLabel,
    ) -> Self {
        Self {
            id: id.trim().to_string(),
            field,
            clauses,
            consequent,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn field(&self) -> &FieldName {
        &self.field
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn consequent(&self) -> &CategoryLabel {
        &self.consequent
    }

    pub fn weight_sum(&self) -> f64 {
        self.clauses.iter().map(Clause::weight).sum()
    }
}

/// A category set plus an ordered list of rules, stored grouped by field.
///
/// Construction canonicalizes rule order: rules are grouped by field in
/// first-appearance order, keeping their relative order within a field.
/// Evaluation is order-independent, so grouping only affects presentation
/// and lets the textual form round-trip exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct Rulebook {
    category_set: CategorySet,
    rules: Vec<Rule>,
}

/// Validation failure for [`Rulebook::new`], carrying every diagnostic.
#[derive(Debug, Clone, PartialEq)]
pub struct InvalidRulebook(Vec<RulebookDiagnostic>);

impl InvalidRulebook {
    pub fn diagnostics(&self) -> &[RulebookDiagnostic] {
        &self.0
    }
}

impl core::fmt::Display for InvalidRulebook {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "rulebook failed validation with {} diagnostic(s)", self.0.len())?;
        for d in &self.0 {
            write!(f, "\n  {d}")?;
        }
        Ok(())
    }
}

impl core::error::Error for InvalidRulebook {}

impl Rulebook {
    /// Checked constructor: groups the rules and rejects the book unless
    /// [`validate_rulebook`] comes back clean.
    pub fn new(category_set: CategorySet, rules: Vec<Rule>) -> Result<Self, InvalidRulebook> {
        let rb = Self::from_parts(category_set, rules);
        let diagnostics = validate_rulebook(&rb);
        if diagnostics.is_empty() {
            Ok(rb)
        } else {
            Err(InvalidRulebook(diagnostics))
        }
    }

    /// Unchecked constructor; still canonicalizes rule order by field.
    pub fn from_parts(category_set: CategorySet, rules: Vec<Rule>) -> Self {
        let mut grouped: Vec<Rule> = Vec::with_capacity(rules.len());
        let mut field_order: Vec<FieldName> = Vec::new();
        for rule in &rules {
            if !field_order.contains(rule.field()) {
                field_order.push(rule.field().clone());
            }
        }
        for field in &field_order {
            grouped.extend(rules.iter().filter(|r| r.field() == field).cloned());
        }
        Self {
            category_set,
            rules: grouped,
        }
    }

    pub fn category_set(&self) -> &CategorySet {
        &self.category_set
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Field names in first-appearance order.
    pub fn fields(&self) -> Vec<&FieldName> {
        let mut fields: Vec<&FieldName> = Vec::new();
        for rule in &self.rules {
            if !fields.contains(&rule.field()) {
                fields.push(rule.field());
            }
        }
        fields
    }

    pub fn rules_for<'a>(&'a self, field: &'a FieldName) -> impl Iterator<Item = &'a Rule> {
        self.rules.iter().filter(move |r| r.field() == field)
    }

    /// Every distinct subject mentioned by any clause.
    pub fn subjects(&self) -> Vec<&SubjectId> {
        let mut subjects: Vec<&SubjectId> = Vec::new();
        for rule in &self.rules {
            for clause in rule.clauses() {
                if !subjects.contains(&clause.subject()) {
                    subjects.push(clause.subject());
                }
            }
        }
        subjects
    }
}

/// One rulebook validation finding. All findings are errors.
#[derive(Debug, Clone, PartialEq)]
pub enum RulebookDiagnostic {
    WeightSumViolation {
        field: String,
        rule_id: String,
        sum: f64,
    },
    DuplicateRuleId {
        field: String,
        rule_id: String,
    },
    UnknownCategory {
        field: String,
        rule_id: String,
        category: String,
    },
    DuplicateClauseSubject {
        field: String,
        rule_id: String,
        subject: String,
    },
    EmptyRuleId {
        field: String,
    },
    EmptyRule {
        field: String,
        rule_id: String,
    },
}

impl RulebookDiagnostic {
    pub fn rule_id(&self) -> Option<&str> {
        match self {
            Self::WeightSumViolation { rule_id, .. }
            | Self::DuplicateRuleId { rule_id, .. }
            | Self::UnknownCategory { rule_id, .. }
            | Self::DuplicateClauseSubject { rule_id, .. }
            | Self::EmptyRule { rule_id, .. } => Some(rule_id),
            Self::EmptyRuleId { .. } => None,
        }
    }

    pub fn field(&self) -> &str {
        match self {
            Self::WeightSumViolation { field, .. }
            | Self::DuplicateRuleId { field, .. }
            | Self::UnknownCategory { field, .. }
            | Self::DuplicateClauseSubject { field, .. }
            | Self::EmptyRuleId { field }
            | Self::EmptyRule { field, .. } => field,
        }
    }
}

impl core::fmt::Display for RulebookDiagnostic {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::WeightSumViolation { field, rule_id, sum } => write!(
                f,
                "rule `{rule_id}` in field `{field}`: clause weights sum to {sum}, expected 1"
            ),
            Self::DuplicateRuleId { field, rule_id } => {
                write!(f, "field `{field}` declares rule id `{rule_id}` more than once")
            }
            Self::UnknownCategory { field, rule_id, category } => write!(
                f,
                "rule `{rule_id}` in field `{field}` refers to unknown category `{category}`"
            ),
            Self::DuplicateClauseSubject { field, rule_id, subject } => write!(
                f,
                "rule `{rule_id}` in field `{field}` mentions subject `{subject}` more than once"
            ),
            Self::EmptyRuleId { field } => {
                write!(f, "field `{field}` contains a rule with an empty id")
            }
            Self::EmptyRule { field, rule_id } => {
                write!(f, "rule `{rule_id}` in field `{field}` has no clauses")
            }
        }
    }
}

/// Checks a possibly-invalid rulebook and returns one diagnostic per
/// violation; an empty list means the book is valid.
pub fn validate_rulebook(rulebook: &Rulebook) -> Vec<RulebookDiagnostic> {
    let mut diagnostics = Vec::new();
    let categories = rulebook.category_set();

    for field in rulebook.fields() {
        let rules: Vec<&Rule> = rulebook.rules_for(field).collect();
        for (i, rule) in rules.iter().enumerate() {
            let field_name = field.as_str().to_string();
            if rule.id().is_empty() {
                diagnostics.push(RulebookDiagnostic::EmptyRuleId { field: field_name });
                continue;
            }
            if rules[..i]
                .iter()
                .any(|r| crate::ident::fold(r.id()) == crate::ident::fold(rule.id()))
            {
                diagnostics.push(RulebookDiagnostic::DuplicateRuleId {
                    field: field_name.clone(),
                    rule_id: rule.id().to_string(),
                });
            }
            if rule.clauses().is_empty() {
                diagnostics.push(RulebookDiagnostic::EmptyRule {
                    field: field_name,
                    rule_id: rule.id().to_string(),
                });
                continue;
            }
            let sum = rule.weight_sum();
            if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
                diagnostics.push(RulebookDiagnostic::WeightSumViolation {
                    field: field_name.clone(),
                    rule_id: rule.id().to_string(),
                    sum,
                });
            }
            if !categories.contains(rule.consequent().as_str()) {
                diagnostics.push(RulebookDiagnostic::UnknownCategory {
                    field: field_name.clone(),
                    rule_id: rule.id().to_string(),
                    category: rule.consequent().as_str().to_string(),
                });
            }
            for (j, clause) in rule.clauses().iter().enumerate() {
                if rule.clauses()[..j]
                    .iter()
                    .any(|c| c.subject() == clause.subject())
                {
                    diagnostics.push(RulebookDiagnostic::DuplicateClauseSubject {
                        field: field_name.clone(),
                        rule_id: rule.id().to_string(),
                        subject: clause.subject().as_str().to_string(),
                    });
                }
                if !categories.contains(clause.category().as_str()) {
                    diagnostics.push(RulebookDiagnostic::UnknownCategory {
                        field: field_name.clone(),
                        rule_id: rule.id().to_string(),
                        category: clause.category().as_str().to_string(),
                    });
                }
            }
        }
    }
    diagnostics
}
