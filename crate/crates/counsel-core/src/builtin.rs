//! The built-in rulebook: Engineering, Medical, and Hospitality.
//!
//! Twenty-eight weighted rules over the `table1-fitted` category set.
//! Engineering weights Mathematics and Physics most heavily, Medical swaps
//! Biology in for Mathematics, and Hospitality combines the Home Science
//! mark with the `House hold` vocational-interest score.

use alloc::vec::Vec;

use crate::fuzzy::{preset_category_set, CategoryLabel, PRESET_TABLE1_FITTED};
use crate::profile::SubjectId;
use crate::rules::{Clause, FieldName, Rule, Rulebook};

pub const MATHEMATICS: &str = "Mathematics";
pub const PHYSICS: &str = "Physics";
pub const CHEMISTRY: &str = "Chemistry";
pub const BIOLOGY: &str = "Biology";
pub const HOME_SCIENCE: &str = "Home Science";
pub const HOUSE_HOLD: &str = "House hold";

pub const ENGINEERING: &str = "Engineering";
pub const MEDICAL: &str = "Medical";
pub const HOSPITALITY: &str = "Hospitality";

const THIRD: f64 = 1.0 / 3.0;

/// (rule id, clauses as (subject, category, weight), consequent category)
type RuleSpec<'a> = (&'a str, &'a [(&'a str, &'a str, f64)], &'a str);

fn build(field: &str, specs: &[RuleSpec<'_>]) -> Vec<Rule> {
    let field = FieldName::new(field).expect("builtin field name");
    specs
        .iter()
        .map(|(id, clauses, consequent)| {
            let clauses = clauses
                .iter()
                .map(|(subject, category, weight)| {
                    Clause::new(
                        SubjectId::new(subject).expect("builtin subject"),
                        CategoryLabel::new(category).expect("builtin category"),
                        *weight,
                    )
                    .expect("builtin clause weight")
                })
                .collect();
            Rule::new(
                id,
                field.clone(),
                clauses,
                CategoryLabel::new(consequent).expect("builtin consequent"),
            )
            .expect("builtin rule")
        })
        .collect()
}

/// Builds the reference rulebook: 11 Engineering + 11 Medical +
/// 6 Hospitality rules over the [`PRESET_TABLE1_FITTED`] categories.
pub fn builtin_rulebook() -> Rulebook {
    const E: &str = "Excellent";
    const G: &str = "Good";
    const A: &str = "Average";

    let engineering: &[RuleSpec<'_>] = &[
        ("E1", &[(MATHEMATICS, E, THIRD), (PHYSICS, E, THIRD), (CHEMISTRY, E, THIRD)], E),
        ("E2", &[(MATHEMATICS, E, 0.4), (PHYSICS, E, 0.4), (CHEMISTRY, G, 0.2)], E),
        ("E3", &[(MATHEMATICS, E, 0.4), (PHYSICS, G, 0.2), (CHEMISTRY, E, 0.4)], E),
        ("E4", &[(MATHEMATICS, G, 0.2), (PHYSICS, E, 0.4), (CHEMISTRY, E, 0.4)], E),
        ("G1", &[(MATHEMATICS, E, 0.4), (PHYSICS, G, 0.3), (CHEMISTRY, G, 0.3)], G),
        ("G2", &[(MATHEMATICS, G, 0.3), (PHYSICS, E, 0.4), (CHEMISTRY, G, 0.3)], G),
        ("G3", &[(MATHEMATICS, G, 0.3), (PHYSICS, G, 0.3), (CHEMISTRY, E, 0.4)], G),
        ("G4", &[(MATHEMATICS, G, THIRD), (PHYSICS, G, THIRD), (CHEMISTRY, G, THIRD)], G),
        ("G5", &[(MATHEMATICS, E, 0.4), (PHYSICS, G, 0.35), (CHEMISTRY, A, 0.25)], G),
        ("G6", &[(MATHEMATICS, G, 0.35), (PHYSICS, E, 0.4), (CHEMISTRY, A, 0.25)], G),
        ("G7", &[(MATHEMATICS, G, 0.4), (PHYSICS, G, 0.4), (CHEMISTRY, A, 0.2)], G),
    ];

    let medical: &[RuleSpec<'_>] = &[
        ("E1", &[(BIOLOGY, E, THIRD), (PHYSICS, E, THIRD), (CHEMISTRY, E, THIRD)], E),
        ("E2", &[(BIOLOGY, E, 0.4), (PHYSICS, E, 0.4), (CHEMISTRY, G, 0.2)], E),
        ("E3", &[(BIOLOGY, E, 0.4), (PHYSICS, G, 0.2), (CHEMISTRY, E, 0.4)], E),
        ("E4", &[(BIOLOGY, G, 0.2), (PHYSICS, E, 0.4), (CHEMISTRY, E, 0.4)], E),
        ("G1", &[(BIOLOGY, E, 0.4), (PHYSICS, G, 0.3), (CHEMISTRY, G, 0.3)], G),
        ("G2", &[(BIOLOGY, G, 0.3), (PHYSICS, E, 0.4), (CHEMISTRY, G, 0.3)], G),
        ("G3", &[(BIOLOGY, G, 0.3), (PHYSICS, G, 0.3), (CHEMISTRY, E, 0.4)], G),
        ("G4", &[(BIOLOGY, G, THIRD), (PHYSICS, G, THIRD), (CHEMISTRY, G, THIRD)], G),
        ("G5", &[(BIOLOGY, G, 0.4), (PHYSICS, G, 0.4), (CHEMISTRY, A, 0.2)], G),
        ("G6", &[(BIOLOGY, G, 0.4), (PHYSICS, A, 0.2), (CHEMISTRY, G, 0.4)], G),
        ("G7", &[(BIOLOGY, A, 0.2), (PHYSICS, G, 0.4), (CHEMISTRY, G, 0.4)], G),
    ];

    let hospitality: &[RuleSpec<'_>] = &[
        ("Eh1", &[(HOME_SCIENCE, E, 0.5), (HOUSE_HOLD, E, 0.5)], E),
        ("Eh2", &[(HOME_SCIENCE, E, 0.7), (HOUSE_HOLD, G, 0.3)], E),
        ("Eh3", &[(HOME_SCIENCE, G, 0.3), (HOUSE_HOLD, E, 0.7)], E),
        ("Gh1", &[(HOME_SCIENCE, G, 0.5), (HOUSE_HOLD, G, 0.5)], G),
        ("Gh2", &[(HOME_SCIENCE, G, 0.7), (HOUSE_HOLD, A, 0.3)], G),
        ("Gh3", &[(HOME_SCIENCE, A, 0.3), (HOUSE_HOLD, G, 0.7)], G),
    ];

    let mut rules = build(ENGINEERING, engineering);
    rules.extend(build(MEDICAL, medical));
    rules.extend(build(HOSPITALITY, hospitality));

    let categories = preset_category_set(PRESET_TABLE1_FITTED).expect("builtin preset");
    Rulebook::new(categories, rules).expect("builtin rulebook validates")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rules::{validate_rulebook, WEIGHT_SUM_TOLERANCE};

    #[test]
    fn twenty_eight_rules_across_three_fields() {
        let rb = builtin_rulebook();
        assert_eq!(rb.len(), 28);
        let fields = rb.fields();
        let count = |name: &str| {
            rb.rules()
                .iter()
                .filter(|r| r.field().as_str() == name)
                .count()
        };
        assert_eq!(fields.len(), 3);
        assert_eq!(count(ENGINEERING), 11);
        assert_eq!(count(MEDICAL), 11);
        assert_eq!(count(HOSPITALITY), 6);
    }

    #[test]
    fn engineering_g5_weights() {
        let rb = builtin_rulebook();
        let g5 = rb
            .rules()
            .iter()
            .find(|r| r.field().as_str() == ENGINEERING && r.id() == "G5")
            .unwrap();
        let weights: alloc::vec::Vec<f64> = g5.clauses().iter().map(|c| c.weight()).collect();
        assert_eq!(weights, alloc::vec![0.4, 0.35, 0.25]);
    }

    #[test]
    fn every_rule_weight_sum_is_one() {
        let rb = builtin_rulebook();
        for rule in rb.rules() {
            assert!(
                (rule.weight_sum() - 1.0).abs() <= WEIGHT_SUM_TOLERANCE,
                "rule {} sums to {}",
                rule.id(),
                rule.weight_sum()
            );
        }
    }

    #[test]
    fn builtin_rulebook_validates_clean() {
        assert!(validate_rulebook(&builtin_rulebook()).is_empty());
    }

    #[test]
    fn uses_fitted_preset() {
        let rb = builtin_rulebook();
        assert_eq!(rb.category_set().preset_name(), PRESET_TABLE1_FITTED);
    }

    #[test]
    fn all_zero_scores_zero_every_field() {
        use crate::engine::assess_profile;
        use crate::fuzzy::Score;
        use crate::profile::Profile;

        let profile = Profile::new(
            "z",
            [MATHEMATICS, PHYSICS, CHEMISTRY, BIOLOGY, HOME_SCIENCE, HOUSE_HOLD]
                .map(|s| (SubjectId::new(s).unwrap(), Score::new(0.0).unwrap())),
        )
        .unwrap();
        let assessments = assess_profile(&builtin_rulebook(), &profile).unwrap();
        assert_eq!(assessments.len(), 3);
        for assessment in &assessments {
            for category in assessment.categories() {
                assert_eq!(category.score().value(), 0.0, "{}", assessment.field());
            }
        }
    }

    #[test]
    fn reference_student_engineering_breakdown() {
        use crate::engine::{assess_profile, explain_assessment};
        use crate::fuzzy::Score;
        use crate::profile::Profile;
        use crate::round2;

        let profile = Profile::new(
            "1",
            [
                (MATHEMATICS, 82.0),
                (PHYSICS, 85.0),
                (CHEMISTRY, 86.0),
                (BIOLOGY, 65.0),
                (HOME_SCIENCE, 56.0),
                (HOUSE_HOLD, 60.0),
            ]
            .map(|(s, v)| (SubjectId::new(s).unwrap(), Score::new(v).unwrap())),
        )
        .unwrap();
        let assessments = assess_profile(&builtin_rulebook(), &profile).unwrap();
        let explanation = explain_assessment(&assessments[0]);
        assert_eq!(explanation.field.as_str(), ENGINEERING);

        let excellent = &explanation.categories[0];
        let values: alloc::vec::Vec<f64> =
            excellent.rules.iter().map(|r| round2(r.value.value())).collect();
        assert_eq!(values, alloc::vec![0.93, 0.72, 0.72, 0.80]);
        assert_eq!(round2(excellent.final_grade.value()), 0.79);

        let good = &explanation.categories[1];
        let values: alloc::vec::Vec<f64> =
            good.rules.iter().map(|r| round2(r.value.value())).collect();
        assert_eq!(values, alloc::vec![0.32, 0.40, 0.40, 0.00, 0.32, 0.40, 0.00]);
        assert_eq!(round2(good.final_grade.value()), 0.26);

        for rule in excellent.rules.iter().chain(&good.rules) {
            let sum: f64 = rule.terms.iter().map(|t| t.weighted).sum();
            assert!((sum - rule.value.value()).abs() < 1e-12, "terms of {} drift", rule.rule_id);
        }
    }
}
