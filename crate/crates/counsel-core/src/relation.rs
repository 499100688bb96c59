//! Finite relations between career fields, courses, institutes, and jobs.
//!
//! Relations are crisp sets of ordered pairs. Composition is written in
//! data-flow order: `r.compose(&s)` chains field→course with
//! course→institute into field→institute. Queries return sorted sets so
//! repeated calls are byte-identical.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use thiserror::Error;

use crate::ident::{fold, Ident};
use crate::Severity;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RelationError {
    #[error("entity name must not be empty")]
    EmptyEntityName,
    #[error("expected an entity of kind {expected}, got {actual} `{name}`")]
    KindMismatch {
        expected: EntityKind,
        actual: EntityKind,
        name: String,
    },
    #[error("relations cannot be composed: first targets {first_target}, second sources {second_source}")]
    ComposeKindMismatch {
        first_target: EntityKind,
        second_source: EntityKind,
    },
    #[error("relation {slot} must go {expected_source}→{expected_target}, got {actual_source}→{actual_target}")]
    RelationShape {
        slot: &'static str,
        expected_source: EntityKind,
        expected_target: EntityKind,
        actual_source: EntityKind,
        actual_target: EntityKind,
    },
    #[error("unknown career field `{0}`")]
    UnknownField(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityKind {
    Field,
    Course,
    Job,
    Institute,
}

impl core::fmt::Display for EntityKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            EntityKind::Field => "field",
            EntityKind::Course => "course",
            EntityKind::Job => "job",
            EntityKind::Institute => "institute",
        })
    }
}

/// A named entity of one kind. Names compare case-insensitively with
/// whitespace collapsed; ordering is by kind, then name.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntityId {
    kind: EntityKind,
    name: Ident,
}

impl EntityId {
    pub fn new(kind: EntityKind, name: &str) -> Result<Self, RelationError> {
        Ident::new(name)
            .map(|name| Self { kind, name })
            .ok_or(RelationError::EmptyEntityName)
    }

    pub fn kind(&self) -> EntityKind {
        self.kind
    }

    pub fn name(&self) -> &str {
        self.name.display()
    }

    fn key(&self) -> &str {
        self.name.key()
    }
}

impl core::fmt::Display for EntityId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{} `{}`", self.kind, self.name)
    }
}

/// An institute with an optional region attribute used by the region filter.
#[derive(Debug, Clone, PartialEq)]
pub struct InstituteRecord {
    id: EntityId,
    region: Option<String>,
}

impl InstituteRecord {
    pub fn new(name: &str, region: Option<&str>) -> Result<Self, RelationError> {
        Ok(Self {
            id: EntityId::new(EntityKind::Institute, name)?,
            region: region.map(|r| r.trim().to_string()).filter(|r| !r.is_empty()),
        })
    }

    pub fn id(&self) -> &EntityId {
        &self.id
    }

    pub fn region(&self) -> Option<&str> {
        self.region.as_deref()
    }

    fn in_region(&self, region: &str) -> bool {
        self.region
            .as_deref()
            .map(|r| fold(r) == fold(region))
            .unwrap_or(false)
    }
}

/// A crisp binary relation between two entity kinds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRelation {
    source_kind: EntityKind,
    target_kind: EntityKind,
    pairs: BTreeSet<(EntityId, EntityId)>,
}

impl FiniteRelation {
    pub fn new(source_kind: EntityKind, target_kind: EntityKind) -> Self {
        Self {
            source_kind,
            target_kind,
            pairs: BTreeSet::new(),
        }
    }

    pub fn from_pairs(
        source_kind: EntityKind,
        target_kind: EntityKind,
        pairs: impl IntoIterator<Item = (EntityId, EntityId)>,
    ) -> Result<Self, RelationError> {
        let mut rel = Self::new(source_kind, target_kind);
        for (a, b) in pairs {
            rel.insert(a, b)?;
        }
        Ok(rel)
    }

    pub fn insert(&mut self, source: EntityId, target: EntityId) -> Result<(), RelationError> {
        if source.kind() != self.source_kind {
            return Err(RelationError::KindMismatch {
                expected: self.source_kind,
                actual: source.kind(),
                name: source.name().to_string(),
            });
        }
        if target.kind() != self.target_kind {
            return Err(RelationError::KindMismatch {
                expected: self.target_kind,
                actual: target.kind(),
                name: target.name().to_string(),
            });
        }
        self.pairs.insert((source, target));
        Ok(())
    }

    pub fn source_kind(&self) -> EntityKind {
        self.source_kind
    }

    pub fn target_kind(&self) -> EntityKind {
        self.target_kind
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&EntityId, &EntityId)> {
        self.pairs.iter().map(|(a, b)| (a, b))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, source: &EntityId, target: &EntityId) -> bool {
        self.pairs
            .iter()
            .any(|(a, b)| a == source && b == target)
    }

    /// Left-to-right composition: `(a, c)` is in the result iff some `b`
    /// links `a` to `b` here and `b` to `c` in `second`.
    pub fn compose(&self, second: &FiniteRelation) -> Result<FiniteRelation, RelationError> {
        if self.target_kind != second.source_kind {
            return Err(RelationError::ComposeKindMismatch {
                first_target: self.target_kind,
                second_source: second.source_kind,
            });
        }
        let mut by_source: BTreeMap<&EntityId, Vec<&EntityId>> = BTreeMap::new();
        for (b, c) in &second.pairs {
            by_source.entry(b).or_default().push(c);
        }
        let mut result = FiniteRelation::new(self.source_kind, second.target_kind);
        for (a, b) in &self.pairs {
            if let Some(targets) = by_source.get(b) {
                for c in targets {
                    result.pairs.insert((a.clone(), (*c).clone()));
                }
            }
        }
        Ok(result)
    }

    /// All entities related to `source`, sorted by name.
    pub fn image(&self, source: &EntityId) -> Result<BTreeSet<EntityId>, RelationError> {
        if source.kind() != self.source_kind {
            return Err(RelationError::KindMismatch {
                expected: self.source_kind,
                actual: source.kind(),
                name: source.name().to_string(),
            });
        }
        Ok(self
            .pairs
            .iter()
            .filter(|(a, _)| a == source)
            .map(|(_, b)| b.clone())
            .collect())
    }
}

/// Everything a recommendation needs: declared entities and the three
/// relations field→course (R), course→institute (S), course→job (T).
///
/// Immutable once built. [`KnowledgeBase::from_parts`] accepts undeclared
/// pair endpoints and duplicates so that [`KnowledgeBase::validate`] can
/// report them; [`KnowledgeBase::new`] rejects books with error-severity
/// findings.
#[derive(Debug, Clone, PartialEq)]
pub struct KnowledgeBase {
    fields: Vec<EntityId>,
    courses: Vec<EntityId>,
    jobs: Vec<EntityId>,
    institutes: Vec<InstituteRecord>,
    field_courses: FiniteRelation,
    course_institutes: FiniteRelation,
    course_jobs: FiniteRelation,
}

/// Validation failure for [`KnowledgeBase::new`].
#[derive(Debug, Clone, PartialEq)]
pub struct InvalidKnowledgeBase(Vec<KbDiagnostic>);

impl InvalidKnowledgeBase {
    pub fn diagnostics(&self) -> &[KbDiagnostic] {
        &self.0
    }
}

impl core::fmt::Display for InvalidKnowledgeBase {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(
            f,
            "knowledge base failed validation with {} error(s)",
            self.0.len()
        )?;
        for d in &self.0 {
            write!(f, "\n  {d}")?;
        }
        Ok(())
    }
}

impl core::error::Error for InvalidKnowledgeBase {}

/// Where a student's top field leads: courses, institutes offering them,
/// and jobs they open up. All sets sorted by name.
#[derive(Debug, Clone, PartialEq)]
pub struct Recommendation {
    field: EntityId,
    courses: BTreeSet<EntityId>,
    institutes: BTreeSet<EntityId>,
    jobs: BTreeSet<EntityId>,
}

impl Recommendation {
    pub fn field(&self) -> &EntityId {
        &self.field
    }

    pub fn courses(&self) -> &BTreeSet<EntityId> {
        &self.courses
    }

    pub fn institutes(&self) -> &BTreeSet<EntityId> {
        &self.institutes
    }

    pub fn jobs(&self) -> &BTreeSet<EntityId> {
        &self.jobs
    }
}

impl KnowledgeBase {
    /// Builds a knowledge base from declarations and raw pair lists without
    /// validating referential integrity. Pair endpoints take their kinds
    /// from their slots (R: field→course, S: course→institute,
    /// T: course→job).
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        fields: Vec<EntityId>,
        courses: Vec<EntityId>,
        jobs: Vec<EntityId>,
        institutes: Vec<InstituteRecord>,
        field_courses: FiniteRelation,
        course_institutes: FiniteRelation,
        course_jobs: FiniteRelation,
    ) -> Result<Self, RelationError> {
        let expect = |slot: &'static str, rel: &FiniteRelation, src: EntityKind, tgt: EntityKind| {
            if rel.source_kind() != src || rel.target_kind() != tgt {
                Err(RelationError::RelationShape {
                    slot,
                    expected_source: src,
                    expected_target: tgt,
                    actual_source: rel.source_kind(),
                    actual_target: rel.target_kind(),
                })
            } else {
                Ok(())
            }
        };
        expect("R", &field_courses, EntityKind::Field, EntityKind::Course)?;
        expect("S", &course_institutes, EntityKind::Course, EntityKind::Institute)?;
        expect("T", &course_jobs, EntityKind::Course, EntityKind::Job)?;
        Ok(Self {
            fields,
            courses,
            jobs,
            institutes,
            field_courses,
            course_institutes,
            course_jobs,
        })
    }

    /// Checked constructor: rejects the base if validation finds errors
    /// (warnings are allowed).
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        fields: Vec<EntityId>,
        courses: Vec<EntityId>,
        jobs: Vec<EntityId>,
        institutes: Vec<InstituteRecord>,
        field_courses: FiniteRelation,
        course_institutes: FiniteRelation,
        course_jobs: FiniteRelation,
    ) -> Result<Self, InvalidKnowledgeBase> {
        let kb = Self::from_parts(
            fields,
            courses,
            jobs,
            institutes,
            field_courses,
            course_institutes,
            course_jobs,
        )
        .map_err(|e| {
            InvalidKnowledgeBase(alloc::vec![KbDiagnostic::RelationShape(e.to_string())])
        })?;
        let errors: Vec<KbDiagnostic> = kb
            .validate()
            .into_iter()
            .filter(|d| d.severity() == Severity::Error)
            .collect();
        if errors.is_empty() {
            Ok(kb)
        } else {
            Err(InvalidKnowledgeBase(errors))
        }
    }

    pub fn fields(&self) -> &[EntityId] {
        &self.fields
    }

    pub fn courses(&self) -> &[EntityId] {
        &self.courses
    }

    pub fn jobs(&self) -> &[EntityId] {
        &self.jobs
    }

    pub fn institutes(&self) -> &[InstituteRecord] {
        &self.institutes
    }

    pub fn field_courses(&self) -> &FiniteRelation {
        &self.field_courses
    }

    pub fn course_institutes(&self) -> &FiniteRelation {
        &self.course_institutes
    }

    pub fn course_jobs(&self) -> &FiniteRelation {
        &self.course_jobs
    }

    pub fn find_field(&self, name: &str) -> Option<&EntityId> {
        let key = fold(name);
        self.fields.iter().find(|f| f.key() == key)
    }

    /// Recommends courses, institutes, and jobs for a declared field.
    ///
    /// With a region given, institutes are filtered to an exact
    /// case-insensitive region match; institutes without a region attribute
    /// are excluded by the filter.
    pub fn recommend(
        &self,
        field_name: &str,
        region: Option<&str>,
    ) -> Result<Recommendation, RelationError> {
        let field = self
            .find_field(field_name)
            .ok_or_else(|| RelationError::UnknownField(field_name.to_string()))?;
        let courses = self.field_courses.image(field)?;
        let field_institutes = self.field_courses.compose(&self.course_institutes)?;
        let field_jobs = self.field_courses.compose(&self.course_jobs)?;
        let mut institutes = field_institutes.image(field)?;
        if let Some(region) = region {
            institutes.retain(|id| {
                self.institutes
                    .iter()
                    .any(|rec| rec.id() == id && rec.in_region(region))
            });
        }
        let jobs = field_jobs.image(field)?;
        Ok(Recommendation {
            field: field.clone(),
            courses,
            institutes,
            jobs,
        })
    }

    /// Checks declarations and pair endpoints; dangling references and
    /// duplicate names are errors, incompleteness (a field without courses,
    /// a course nothing links to) is a warning.
    pub fn validate(&self) -> Vec<KbDiagnostic> {
        let mut diagnostics = Vec::new();

        let mut check_duplicates = |ids: &mut dyn Iterator<Item = &EntityId>| {
            let mut seen: BTreeSet<&str> = BTreeSet::new();
            for id in ids {
                if !seen.insert(id.key()) {
                    diagnostics.push(KbDiagnostic::DuplicateEntity {
                        kind: id.kind(),
                        name: id.name().to_string(),
                    });
                }
            }
        };
        check_duplicates(&mut self.fields.iter());
        check_duplicates(&mut self.courses.iter());
        check_duplicates(&mut self.jobs.iter());
        check_duplicates(&mut self.institutes.iter().map(InstituteRecord::id));

        let declared = |pool: &[EntityId], id: &EntityId| pool.iter().any(|e| e == id);
        let institute_ids: Vec<EntityId> =
            self.institutes.iter().map(|r| r.id().clone()).collect();

        let mut check_pairs = |name: &'static str,
                               rel: &FiniteRelation,
                               sources: &[EntityId],
                               targets: &[EntityId]| {
            for (a, b) in rel.pairs() {
                if !declared(sources, a) {
                    diagnostics.push(KbDiagnostic::DanglingReference {
                        relation: name,
                        entity: a.clone(),
                        pair: (a.name().to_string(), b.name().to_string()),
                    });
                }
                if !declared(targets, b) {
                    diagnostics.push(KbDiagnostic::DanglingReference {
                        relation: name,
                        entity: b.clone(),
                        pair: (a.name().to_string(), b.name().to_string()),
                    });
                }
            }
        };
        check_pairs("R", &self.field_courses, &self.fields, &self.courses);
        check_pairs("S", &self.course_institutes, &self.courses, &institute_ids);
        check_pairs("T", &self.course_jobs, &self.courses, &self.jobs);

        for field in &self.fields {
            if !self.field_courses.pairs().any(|(a, _)| a == field) {
                diagnostics.push(KbDiagnostic::FieldWithoutCourses {
                    field: field.name().to_string(),
                });
            }
        }
        for course in &self.courses {
            if !self.field_courses.pairs().any(|(_, b)| b == course) {
                diagnostics.push(KbDiagnostic::UnreachableCourse {
                    course: course.name().to_string(),
                });
            }
        }
        diagnostics
    }
}

/// One knowledge-base validation finding.
#[derive(Debug, Clone, PartialEq)]
pub enum KbDiagnostic {
    /// A relation slot had the wrong kind signature.
    RelationShape(String),
    DanglingReference {
        relation: &'static str,
        entity: EntityId,
        pair: (String, String),
    },
    DuplicateEntity {
        kind: EntityKind,
        name: String,
    },
    FieldWithoutCourses {
        field: String,
    },
    UnreachableCourse {
        course: String,
    },
}

impl KbDiagnostic {
    pub fn severity(&self) -> Severity {
        match self {
            Self::RelationShape(_) | Self::DanglingReference { .. } | Self::DuplicateEntity { .. } => {
                Severity::Error
            }
            Self::FieldWithoutCourses { .. } | Self::UnreachableCourse { .. } => Severity::Warning,
        }
    }
}

impl core::fmt::Display for KbDiagnostic {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::RelationShape(msg) => write!(f, "{msg}"),
            Self::DanglingReference { relation, entity, pair } => write!(
                f,
                "relation {relation} pair ({}, {}) references undeclared {entity}",
                pair.0, pair.1
            ),
            Self::DuplicateEntity { kind, name } => {
                write!(f, "duplicate {kind} `{name}`")
            }
            Self::FieldWithoutCourses { field } => {
                write!(f, "field `{field}` has no related courses")
            }
            Self::UnreachableCourse { course } => {
                write!(f, "course `{course}` is not related to any field")
            }
        }
    }
}
