//! Report assembly and rendering.
//!
//! Text mode prints grades at two decimals (rounded half away from zero);
//! JSON mode carries full-precision values with a fixed key order, so the
//! two views agree after rounding.

use counsel_core::{
    round2, FieldAssessment, MembershipFunction, Ranking, Recommendation, Score,
};
use serde::{Deserialize, Serialize};

/// One student's assessed fields, ranking, and optional phase-2 lookup.
#[derive(Debug, Clone)]
pub struct StudentReport {
    pub student_id: String,
    pub assessments: Vec<FieldAssessment>,
    pub ranking: Option<Ranking>,
    pub recommendation: Option<Recommendation>,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub students: Vec<StudentReport>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Json,
}

fn fmt2(value: f64) -> String {
    format!("{:.2}", round2(value))
}

pub fn render_report(report: &Report, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => render_text(report),
        ReportFormat::Json => render_json(report),
    }
}

fn render_text(report: &Report) -> String {
    let mut out = String::new();
    for student in &report.students {
        out.push_str(&format!("student {}\n", student.student_id));
        if student.assessments.is_empty() {
            out.push_str("  no fields assessed\n");
        }
        for assessment in &student.assessments {
            out.push_str(&format!("  {}\n", assessment.field().as_str()));
            for category in assessment.categories() {
                out.push_str(&format!("    {:<10}", category.category().as_str()));
                for rule in category.rule_scores() {
                    out.push_str(&format!(" {} {}", rule.rule_id(), fmt2(rule.value().value())));
                }
                out.push_str(&format!("  | final {}\n", fmt2(category.score().value())));
            }
        }
        if let Some(ranking) = &student.ranking {
            out.push_str("  ranking\n");
            for (i, entry) in ranking.entries().iter().enumerate() {
                out.push_str(&format!(
                    "    {}. {} (Excellent {}, Good {})\n",
                    i + 1,
                    entry.field.as_str(),
                    fmt2(entry.excellent.value()),
                    fmt2(entry.good.value()),
                ));
            }
        }
        if let Some(rec) = &student.recommendation {
            out.push_str(&format!("  recommendation for {}\n", rec.field().name()));
            out.push_str(&render_entity_lines(rec, "    "));
        }
        for note in &student.notes {
            out.push_str(&format!("  note: {note}\n"));
        }
    }
    if report.students.is_empty() {
        out.push_str("no fields assessed\n");
    }
    out
}

fn render_entity_lines(rec: &Recommendation, indent: &str) -> String {
    let join = |set: &std::collections::BTreeSet<counsel_core::EntityId>| -> String {
        if set.is_empty() {
            String::from("(none)")
        } else {
            set.iter().map(|e| e.name()).collect::<Vec<_>>().join(", ")
        }
    };
    format!(
        "{indent}courses: {}\n{indent}institutes: {}\n{indent}jobs: {}\n",
        join(rec.courses()),
        join(rec.institutes()),
        join(rec.jobs()),
    )
}

/// Serialized shape of the JSON report. Field order is the key order.
#[derive(Serialize, Deserialize)]
struct JsonReport {
    students: Vec<JsonStudent>,
}

#[derive(Serialize, Deserialize)]
struct JsonStudent {
    id: String,
    fields: Vec<JsonField>,
    ranking: Vec<JsonRanked>,
    #[serde(skip_serializing_if = "Option::is_none")]
    recommendation: Option<JsonRecommendation>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonField {
    field: String,
    categories: Vec<JsonCategory>,
}

#[derive(Serialize, Deserialize)]
struct JsonCategory {
    category: String,
    #[serde(rename = "final")]
    final_grade: f64,
    rules: Vec<JsonRule>,
}

#[derive(Serialize, Deserialize)]
struct JsonRule {
    id: String,
    value: f64,
    terms: Vec<JsonTerm>,
}

#[derive(Serialize, Deserialize)]
struct JsonTerm {
    subject: String,
    category: String,
    weight: f64,
    grade: f64,
}

#[derive(Serialize, Deserialize)]
struct JsonRanked {
    field: String,
    excellent: f64,
    good: f64,
}

#[derive(Serialize, Deserialize)]
struct JsonRecommendation {
    field: String,
    courses: Vec<String>,
    institutes: Vec<String>,
    jobs: Vec<String>,
}

fn recommendation_json(rec: &Recommendation) -> JsonRecommendation {
    JsonRecommendation {
        field: rec.field().name().to_string(),
        courses: rec.courses().iter().map(|e| e.name().to_string()).collect(),
        institutes: rec.institutes().iter().map(|e| e.name().to_string()).collect(),
        jobs: rec.jobs().iter().map(|e| e.name().to_string()).collect(),
    }
}

fn render_json(report: &Report) -> String {
    let view = JsonReport {
        students: report
            .students
            .iter()
            .map(|student| JsonStudent {
                id: student.student_id.clone(),
                fields: student
                    .assessments
                    .iter()
                    .map(|assessment| JsonField {
                        field: assessment.field().as_str().to_string(),
                        categories: assessment
                            .categories()
                            .iter()
                            .map(|cat| JsonCategory {
                                category: cat.category().as_str().to_string(),
                                final_grade: cat.score().value(),
                                rules: cat
                                    .rule_scores()
                                    .iter()
                                    .map(|rule| JsonRule {
                                        id: rule.rule_id().to_string(),
                                        value: rule.value().value(),
                                        terms: rule
                                            .contributions()
                                            .iter()
                                            .map(|c| JsonTerm {
                                                subject: c.subject.as_str().to_string(),
                                                category: c.category.as_str().to_string(),
                                                weight: c.weight,
                                                grade: c.grade.value(),
                                            })
                                            .collect(),
                                    })
                                    .collect(),
                            })
                            .collect(),
                    })
                    .collect(),
                ranking: student
                    .ranking
                    .as_ref()
                    .map(|ranking| {
                        ranking
                            .entries()
                            .iter()
                            .map(|entry| JsonRanked {
                                field: entry.field.as_str().to_string(),
                                excellent: entry.excellent.value(),
                                good: entry.good.value(),
                            })
                            .collect()
                    })
                    .unwrap_or_default(),
                recommendation: student.recommendation.as_ref().map(recommendation_json),
                notes: student.notes.clone(),
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&view).expect("report serializes");
    text.push('\n');
    text
}

/// Renders a standalone phase-2 lookup (the `recommend` subcommand).
pub fn render_recommendation(rec: &Recommendation, format: ReportFormat) -> String {
    match format {
        ReportFormat::Text => {
            format!("field {}\n{}", rec.field().name(), render_entity_lines(rec, "  "))
        }
        ReportFormat::Json => {
            let mut text =
                serde_json::to_string_pretty(&recommendation_json(rec)).expect("serializes");
            text.push('\n');
            text
        }
    }
}

/// Samples a membership curve evenly across the whole 0–100 scale into
/// `x,grade` CSV rows with LF line endings.
pub fn membership_csv(mf: &MembershipFunction, samples: usize) -> Result<String, counsel_core::FuzzyError> {
    let points = counsel_core::sample_membership(
        mf,
        Score::new(0.0).expect("0 is on the scale"),
        Score::new(100.0).expect("100 is on the scale"),
        samples,
    )?;
    let mut out = String::from("x,grade\n");
    for (x, grade) in points {
        out.push_str(&format!("{},{}\n", x.value(), grade.value()));
    }
    Ok(out)
}
