//! Loading and saving knowledge bases as JSON.
//!
//! ```json
//! {
//!   "fields": ["Engineering"],
//!   "courses": ["BTech"],
//!   "jobs": ["Developer"],
//!   "institutes": [{"name": "InstA", "region": "south"}],
//!   "R": [["Engineering", "BTech"]],
//!   "S": [["BTech", "InstA"]],
//!   "T": [["BTech", "Developer"]]
//! }
//! ```

use std::fs;
use std::path::Path;

use counsel_core::{
    EntityId, EntityKind, FiniteRelation, InstituteRecord, KbDiagnostic, KnowledgeBase, Severity,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawKb {
    #[serde(default)]
    fields: Vec<String>,
    #[serde(default)]
    courses: Vec<String>,
    #[serde(default)]
    jobs: Vec<String>,
    #[serde(default)]
    institutes: Vec<RawInstitute>,
    #[serde(rename = "R", default)]
    r: Vec<(String, String)>,
    #[serde(rename = "S", default)]
    s: Vec<(String, String)>,
    #[serde(rename = "T", default)]
    t: Vec<(String, String)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstitute {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    region: Option<String>,
}

fn malformed(path: &Path, message: impl Into<String>) -> CliError {
    CliError::Malformed {
        path: path.to_path_buf(),
        message: message.into(),
    }
}

fn parse_kb(path: &Path, text: &str) -> Result<KnowledgeBase, CliError> {
    let raw: RawKb = serde_json::from_str(text).map_err(|e| malformed(path, e.to_string()))?;

    let ids = |names: &[String], kind: EntityKind| -> Result<Vec<EntityId>, CliError> {
        names
            .iter()
            .map(|name| EntityId::new(kind, name).map_err(|e| malformed(path, e.to_string())))
            .collect()
    };
    let fields = ids(&raw.fields, EntityKind::Field)?;
    let courses = ids(&raw.courses, EntityKind::Course)?;
    let jobs = ids(&raw.jobs, EntityKind::Job)?;
    let institutes = raw
        .institutes
        .iter()
        .map(|inst| {
            InstituteRecord::new(&inst.name, inst.region.as_deref())
                .map_err(|e| malformed(path, e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let relation = |pairs: &[(String, String)],
                    source: EntityKind,
                    target: EntityKind|
     -> Result<FiniteRelation, CliError> {
        FiniteRelation::from_pairs(
            source,
            target,
            pairs
                .iter()
                .map(|(a, b)| {
                    Ok((
                        EntityId::new(source, a).map_err(|e| malformed(path, e.to_string()))?,
                        EntityId::new(target, b).map_err(|e| malformed(path, e.to_string()))?,
                    ))
                })
                .collect::<Result<Vec<_>, CliError>>()?,
        )
        .map_err(|e| malformed(path, e.to_string()))
    };
    let field_courses = relation(&raw.r, EntityKind::Field, EntityKind::Course)?;
    let course_institutes = relation(&raw.s, EntityKind::Course, EntityKind::Institute)?;
    let course_jobs = relation(&raw.t, EntityKind::Course, EntityKind::Job)?;

    KnowledgeBase::from_parts(
        fields,
        courses,
        jobs,
        institutes,
        field_courses,
        course_institutes,
        course_jobs,
    )
    .map_err(|e| malformed(path, e.to_string()))
}

/// Loads a knowledge base, rejecting it when validation finds errors.
/// Warnings (incomplete coverage) do not block loading.
pub fn load_kb(path: &Path) -> Result<KnowledgeBase, CliError> {
    let (kb, diagnostics) = kb_diagnostics(path)?;
    let errors: Vec<String> = diagnostics
        .iter()
        .filter(|d| d.severity() == Severity::Error)
        .map(|d| d.to_string())
        .collect();
    if errors.is_empty() {
        Ok(kb)
    } else {
        Err(CliError::KbInvalid {
            path: path.to_path_buf(),
            findings: errors,
        })
    }
}

/// Parses a knowledge base and returns it with every validation finding,
/// errors included. Used by `counsel validate`.
pub fn kb_diagnostics(path: &Path) -> Result<(KnowledgeBase, Vec<KbDiagnostic>), CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let kb = parse_kb(path, &text)?;
    let diagnostics = kb.validate();
    Ok((kb, diagnostics))
}

/// Writes a knowledge base as pretty-printed JSON. Saving and reloading
/// yields a structurally equal base.
pub fn save_kb(kb: &KnowledgeBase, path: &Path) -> Result<(), CliError> {
    let raw = RawKb {
        fields: kb.fields().iter().map(|e| e.name().to_string()).collect(),
        courses: kb.courses().iter().map(|e| e.name().to_string()).collect(),
        jobs: kb.jobs().iter().map(|e| e.name().to_string()).collect(),
        institutes: kb
            .institutes()
            .iter()
            .map(|rec| RawInstitute {
                name: rec.id().name().to_string(),
                region: rec.region().map(str::to_string),
            })
            .collect(),
        r: kb
            .field_courses()
            .pairs()
            .map(|(a, b)| (a.name().to_string(), b.name().to_string()))
            .collect(),
        s: kb
            .course_institutes()
            .pairs()
            .map(|(a, b)| (a.name().to_string(), b.name().to_string()))
            .collect(),
        t: kb
            .course_jobs()
            .pairs()
            .map(|(a, b)| (a.name().to_string(), b.name().to_string()))
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&raw).expect("knowledge base serializes");
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}
