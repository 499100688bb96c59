//! Loading student profiles from JSON.
//!
//! ```json
//! {"students": [{"id": "1", "scores": {"Maths.": 82, "Phy.": 85}}]}
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use counsel_core::{Profile, Score, SubjectId};
use serde::Deserialize;

use crate::error::CliError;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    students: Vec<RawStudent>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStudent {
    id: String,
    scores: BTreeMap<String, f64>,
}

/// The profiles of one input file, in file order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileDocument {
    profiles: Vec<Profile>,
}

impl ProfileDocument {
    pub fn profiles(&self) -> &[Profile] {
        &self.profiles
    }

    pub fn len(&self) -> usize {
        self.profiles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.profiles.is_empty()
    }
}

pub fn load_profiles(path: &Path) -> Result<ProfileDocument, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let raw: RawDocument = serde_json::from_str(&text).map_err(|e| CliError::Malformed {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    if raw.students.is_empty() {
        return Err(CliError::Malformed {
            path: path.to_path_buf(),
            message: String::from("no profiles: the students array is empty"),
        });
    }
    let mut profiles = Vec::with_capacity(raw.students.len());
    for student in &raw.students {
        let mut scores = Vec::with_capacity(student.scores.len());
        for (subject, value) in &student.scores {
            let score = Score::new(*value).map_err(|_| CliError::ScoreOutOfRange {
                path: path.to_path_buf(),
                student: student.id.clone(),
                subject: subject.clone(),
                value: *value,
            })?;
            let subject = SubjectId::new(subject).map_err(|e| CliError::Malformed {
                path: path.to_path_buf(),
                message: format!("student `{}`: {e}", student.id),
            })?;
            scores.push((subject, score));
        }
        let profile = Profile::new(&student.id, scores).map_err(|e| CliError::Malformed {
            path: path.to_path_buf(),
            message: format!("student `{}`: {e}", student.id),
        })?;
        if profiles
            .iter()
            .any(|p: &Profile| p.student_id() == profile.student_id())
        {
            return Err(CliError::Malformed {
                path: path.to_path_buf(),
                message: format!("duplicate student id `{}`", profile.student_id()),
            });
        }
        profiles.push(profile);
    }
    Ok(ProfileDocument { profiles })
}
