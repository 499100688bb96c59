//! Rule evaluation, per-category aggregation, and field ranking.
//!
//! Evaluation is deterministic down to the bit: weighted sums accumulate in
//! a canonical order (clauses by subject, rule values sorted) so that
//! reordering clauses or rules cannot perturb the float result.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use thiserror::Error;

use crate::fuzzy::{CategoryLabel, CategorySet, MembershipGrade};
use crate::ident::fold;
use crate::profile::{Profile, SubjectId};
use crate::rules::{FieldName, Rule, Rulebook};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("profile `{student}` lacks subject `{subject}` required by rule `{rule_id}` of field `{field}`")]
    MissingSubject {
        student: String,
        subject: String,
        rule_id: String,
        field: String,
    },
    #[error("category `{category}` used by rule `{rule_id}` of field `{field}` is not in the category set")]
    UnknownCategory {
        category: String,
        rule_id: String,
        field: String,
    },
    #[error("cannot aggregate an empty rule-score list")]
    EmptyRuleSet,
    #[error("cannot rank an empty assessment list")]
    EmptyAssessmentList,
}

/// One clause's part in a rule score.
#[derive(Debug, Clone, PartialEq)]
pub struct Contribution {
    pub subject: SubjectId,
    pub category: CategoryLabel,
    pub weight: f64,
    pub grade: MembershipGrade,
}

impl Contribution {
    /// weight × grade, the term this clause adds to the rule value.
    pub fn weighted(&self) -> f64 {
        self.weight * self.grade.value()
    }
}

/// The value of one rule applied to one profile, with the per-clause terms
/// in clause order.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleScore {
    rule_id: String,
    value: MembershipGrade,
    contributions: Vec<Contribution>,
}

impl RuleScore {
    pub fn rule_id(&self) -> &str {
        &self.rule_id
    }

    pub fn value(&self) -> MembershipGrade {
        self.value
    }

    pub fn contributions(&self) -> &[Contribution] {
        &self.contributions
    }
}

/// All category scores of one field for one profile.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldAssessment {
    field: FieldName,
    categories: Vec<CategoryAssessment>,
}

/// One consequent category of a field: its aggregated score and the rule
/// scores it averages.
#[derive(Debug, Clone, PartialEq)]
pub struct CategoryAssessment {
    category: CategoryLabel,
    score: MembershipGrade,
    rule_scores: Vec<RuleScore>,
}

impl CategoryAssessment {
    pub fn category(&self) -> &CategoryLabel {
        &self.category
    }

    pub fn score(&self) -> MembershipGrade {
        self.score
    }

    pub fn rule_scores(&self) -> &[RuleScore] {
        &self.rule_scores
    }
}

impl FieldAssessment {
    pub fn field(&self) -> &FieldName {
        &self.field
    }

    /// Categories in first-appearance order among the field's rules.
    pub fn categories(&self) -> &[CategoryAssessment] {
        &self.categories
    }

    /// Aggregated score for a category, looked up case-insensitively.
    pub fn score_for(&self, category: &str) -> Option<MembershipGrade> {
        let key = fold(category);
        self.categories
            .iter()
            .find(|c| c.category.key() == key)
            .map(|c| c.score)
    }
}

/// Fields ordered best-first by Excellent score.
#[derive(Debug, Clone, PartialEq)]
pub struct Ranking {
    entries: Vec<RankedField>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankedField {
    pub field: FieldName,
    pub excellent: MembershipGrade,
    pub good: MembershipGrade,
}

impl Ranking {
    pub fn entries(&self) -> &[RankedField] {
        &self.entries
    }

    pub fn top(&self) -> &RankedField {
        &self.entries[0]
    }
}

/// Evaluates one rule against a profile: the weighted sum of the clause
/// membership grades.
///
/// Assumes a validated rule; a missing subject is a hard error rather than
/// a zero grade, since silently zeroed terms would corrupt the averages.
pub fn evaluate_rule(
    rule: &Rule,
    profile: &Profile,
    categories: &CategorySet,
) -> Result<RuleScore, EvalError> {
    let mut contributions = Vec::with_capacity(rule.clauses().len());
    for clause in rule.clauses() {
        let score = profile
            .score(clause.subject())
            .ok_or_else(|| EvalError::MissingSubject {
                student: profile.student_id().to_string(),
                subject: clause.subject().as_str().to_string(),
                rule_id: rule.id().to_string(),
                field: rule.field().as_str().to_string(),
            })?;
        let mf = categories
            .function(clause.category().as_str())
            .ok_or_else(|| EvalError::UnknownCategory {
                category: clause.category().as_str().to_string(),
                rule_id: rule.id().to_string(),
                field: rule.field().as_str().to_string(),
            })?;
        contributions.push(Contribution {
            subject: clause.subject().clone(),
            category: clause.category().clone(),
            weight: clause.weight(),
            grade: mf.evaluate(score),
        });
    }
    // Sum in subject order so clause permutations give bit-identical values.
    let mut order: Vec<usize> = (0..contributions.len()).collect();
    order.sort_by(|&i, &j| contributions[i].subject.cmp(&contributions[j].subject));
    let value = order.iter().map(|&i| contributions[i].weighted()).sum();
    Ok(RuleScore {
        rule_id: rule.id().to_string(),
        value: MembershipGrade::clamped(value),
        contributions,
    })
}

/// Arithmetic mean of the rule scores, zero-valued rules included.
pub fn aggregate_category(rule_scores: &[RuleScore]) -> Result<MembershipGrade, EvalError> {
    if rule_scores.is_empty() {
        return Err(EvalError::EmptyRuleSet);
    }
    // Sum in value order so rule permutations give bit-identical means.
    let mut values: Vec<f64> = rule_scores.iter().map(|s| s.value().value()).collect();
    values.sort_by(f64::total_cmp);
    let sum: f64 = values.iter().sum();
    Ok(MembershipGrade::clamped(sum / values.len() as f64))
}

/// Runs every rule of every field over a profile and aggregates per
/// (field, category). Fields come out in first-appearance order, categories
/// in first-appearance order within each field.
pub fn assess_profile(
    rulebook: &Rulebook,
    profile: &Profile,
) -> Result<Vec<FieldAssessment>, EvalError> {
    let categories = rulebook.category_set();
    let mut assessments = Vec::new();
    for field in rulebook.fields() {
        let mut groups: Vec<(CategoryLabel, Vec<RuleScore>)> = Vec::new();
        for rule in rulebook.rules_for(field) {
            let score = evaluate_rule(rule, profile, categories)?;
            match groups.iter_mut().find(|(c, _)| c == rule.consequent()) {
                Some((_, scores)) => scores.push(score),
                None => groups.push((rule.consequent().clone(), alloc::vec![score])),
            }
        }
        let mut per_category = Vec::with_capacity(groups.len());
        for (category, rule_scores) in groups {
            let score = aggregate_category(&rule_scores)?;
            per_category.push(CategoryAssessment {
                category,
                score,
                rule_scores,
            });
        }
        assessments.push(FieldAssessment {
            field: field.clone(),
            categories: per_category,
        });
    }
    Ok(assessments)
}

/// Orders fields by Excellent score descending, ties broken by Good score
/// descending, remaining ties by field name ascending.
///
/// A category absent from an assessment counts as 0, so rulebooks that only
/// define one category per field still rank.
pub fn rank_fields(assessments: &[FieldAssessment]) -> Result<Ranking, EvalError> {
    if assessments.is_empty() {
        return Err(EvalError::EmptyAssessmentList);
    }
    let zero = MembershipGrade::clamped(0.0);
    let mut entries: Vec<RankedField> = assessments
        .iter()
        .map(|a| RankedField {
            field: a.field.clone(),
            excellent: a.score_for("Excellent").unwrap_or(zero),
            good: a.score_for("Good").unwrap_or(zero),
        })
        .collect();
    entries.sort_by(|a, b| {
        b.excellent
            .value()
            .total_cmp(&a.excellent.value())
            .then_with(|| b.good.value().total_cmp(&a.good.value()))
            .then_with(|| a.field.cmp(&b.field))
    });
    Ok(Ranking { entries })
}

/// Render-ready breakdown of a field assessment: every rule score with its
/// per-clause terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Explanation {
    pub field: FieldName,
    pub categories: Vec<CategoryExplanation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CategoryExplanation {
    pub category: CategoryLabel,
    pub final_grade: MembershipGrade,
    pub rules: Vec<RuleExplanation>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RuleExplanation {
    pub rule_id: String,
    pub value: MembershipGrade,
    pub terms: Vec<ExplanationTerm>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExplanationTerm {
    pub subject: SubjectId,
    pub category: CategoryLabel,
    pub weight: f64,
    pub grade: MembershipGrade,
    pub weighted: f64,
}

/// Flattens an assessment into an [`Explanation`].
pub fn explain_assessment(assessment: &FieldAssessment) -> Explanation {
    Explanation {
        field: assessment.field.clone(),
        categories: assessment
            .categories
            .iter()
            .map(|cat| CategoryExplanation {
                category: cat.category.clone(),
                final_grade: cat.score,
                rules: cat
                    .rule_scores
                    .iter()
                    .map(|rs| RuleExplanation {
                        rule_id: rs.rule_id.clone(),
                        value: rs.value,
                        terms: rs
                            .contributions
                            .iter()
                            .map(|c| ExplanationTerm {
                                subject: c.subject.clone(),
                                category: c.category.clone(),
                                weight: c.weight,
                                grade: c.grade,
                                weighted: c.weighted(),
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect(),
    }
}
