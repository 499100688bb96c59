//! Student profiles: subject marks and vocational scores keyed by subject.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use thiserror::Error;

use crate::fuzzy::Score;
use crate::ident::Ident;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ProfileError {
    #[error("student id must not be empty")]
    EmptyStudentId,
    #[error("subject name must not be empty")]
    EmptySubjectName,
    #[error("profile must contain at least one score")]
    NoScores,
    #[error("duplicate subject `{0}` in profile")]
    DuplicateSubject(String),
}

/// A subject or vocational-interest name, such as `Mathematics` or
/// `House hold`. Compared case-insensitively with whitespace collapsed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubjectId(Ident);

impl SubjectId {
    pub fn new(name: &str) -> Result<Self, ProfileError> {
        Ident::new(name)
            .map(Self)
            .ok_or(ProfileError::EmptySubjectName)
    }

    pub fn as_str(&self) -> &str {
        self.0.display()
    }
}

impl core::fmt::Display for SubjectId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        self.0.fmt(f)
    }
}

/// One student's scores. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    student_id: String,
    scores: BTreeMap<SubjectId, Score>,
}

impl Profile {
    pub fn new(
        student_id: &str,
        scores: impl IntoIterator<Item = (SubjectId, Score)>,
    ) -> Result<Self, ProfileError> {
        let student_id = student_id.trim();
        if student_id.is_empty() {
            return Err(ProfileError::EmptyStudentId);
        }
        let mut map = BTreeMap::new();
        for (subject, score) in scores {
            let name = subject.as_str().to_string();
            if map.insert(subject, score).is_some() {
                return Err(ProfileError::DuplicateSubject(name));
            }
        }
        if map.is_empty() {
            return Err(ProfileError::NoScores);
        }
        Ok(Self {
            student_id: student_id.to_string(),
            scores: map,
        })
    }

    pub fn student_id(&self) -> &str {
        &self.student_id
    }

    pub fn score(&self, subject: &SubjectId) -> Option<Score> {
        self.scores.get(subject).copied()
    }

    pub fn score_by_name(&self, name: &str) -> Option<Score> {
        let subject = SubjectId::new(name).ok()?;
        self.score(&subject)
    }

    pub fn subjects(&self) -> impl Iterator<Item = &SubjectId> {
        self.scores.keys()
    }

    pub fn scores(&self) -> impl Iterator<Item = (&SubjectId, Score)> {
        self.scores.iter().map(|(s, v)| (s, *v))
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    /// Returns a copy of the profile with one extra (or replaced) score.
    pub fn with_score(&self, subject: SubjectId, score: Score) -> Profile {
        let mut scores = self.scores.clone();
        scores.insert(subject, score);
        Profile {
            student_id: self.student_id.clone(),
            scores,
        }
    }
}
