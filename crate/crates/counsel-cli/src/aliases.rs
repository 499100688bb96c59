//! Subject-name aliases between profile files and rulebooks.
//!
//! Profile files often abbreviate subjects (`Maths.`, `Phy.`, `Chem.`)
//! while rulebooks spell them out. Aliases are equivalence classes of
//! names; before assessment a profile is expanded so that every rulebook
//! subject with an alias match gets an entry.

use counsel_core::{Profile, SubjectId};

use crate::error::CliError;

pub struct SubjectAliases {
    classes: Vec<Vec<SubjectId>>,
}

impl SubjectAliases {
    /// The alias classes used by the command line:
    /// Maths ↔ Maths. ↔ Mathematics, Phy. ↔ Physics, Chem. ↔ Chemistry.
    pub fn builtin() -> Self {
        let class = |names: &[&str]| -> Vec<SubjectId> {
            names
                .iter()
                .map(|n| SubjectId::new(n).expect("alias table names are nonempty"))
                .collect()
        };
        Self {
            classes: vec![
                class(&["Maths", "Maths.", "Mathematics"]),
                class(&["Phy.", "Physics"]),
                class(&["Chem.", "Chemistry"]),
            ],
        }
    }

    pub fn empty() -> Self {
        Self { classes: Vec::new() }
    }

    fn class_containing(&self, subject: &SubjectId) -> Option<&[SubjectId]> {
        self.classes
            .iter()
            .find(|class| class.iter().any(|member| member == subject))
            .map(Vec::as_slice)
    }

    /// Returns a profile extended with one entry per wanted subject that is
    /// absent from the profile but covered by an alias.
    ///
    /// Two aliases of the same subject carrying different scores is an
    /// error; the profile contradicts itself.
    pub fn expand<'a>(
        &self,
        profile: &Profile,
        wanted: impl IntoIterator<Item = &'a SubjectId>,
    ) -> Result<Profile, CliError> {
        let mut expanded = profile.clone();
        for subject in wanted {
            if expanded.score(subject).is_some() {
                continue;
            }
            let Some(class) = self.class_containing(subject) else {
                continue;
            };
            let mut found: Option<(&SubjectId, f64)> = None;
            for member in class {
                let Some(score) = profile.score(member) else {
                    continue;
                };
                match found {
                    Some((first, value)) if value != score.value() => {
                        return Err(CliError::AliasConflict {
                            student: profile.student_id().to_string(),
                            first: first.as_str().to_string(),
                            second: member.as_str().to_string(),
                        });
                    }
                    Some(_) => {}
                    None => found = Some((member, score.value())),
                }
            }
            if let Some((member, _)) = found {
                let score = profile.score(member).expect("member was just found");
                expanded = expanded.with_score(subject.clone(), score);
            }
        }
        Ok(expanded)
    }
}

impl Default for SubjectAliases {
    fn default() -> Self {
        Self::builtin()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use counsel_core::Score;

    fn profile(scores: &[(&str, f64)]) -> Profile {
        Profile::new(
            "s",
            scores.iter().map(|(name, v)| {
                (SubjectId::new(name).unwrap(), Score::new(*v).unwrap())
            }),
        )
        .unwrap()
    }

    fn subject(name: &str) -> SubjectId {
        SubjectId::new(name).unwrap()
    }

    #[test]
    fn abbreviations_reach_rulebook_names() {
        let p = profile(&[("Maths.", 82.0), ("Phy.", 85.0), ("Chem.", 86.0)]);
        let wanted = [subject("Mathematics"), subject("Physics"), subject("Chemistry")];
        let expanded = SubjectAliases::builtin().expand(&p, wanted.iter()).unwrap();
        assert_eq!(expanded.score(&subject("Mathematics")).unwrap().value(), 82.0);
        assert_eq!(expanded.score(&subject("Physics")).unwrap().value(), 85.0);
        assert_eq!(expanded.score(&subject("Chemistry")).unwrap().value(), 86.0);
        // Originals are still there.
        assert_eq!(expanded.score(&subject("Maths.")).unwrap().value(), 82.0);
    }

    #[test]
    fn works_in_the_other_direction_too() {
        let p = profile(&[("Mathematics", 70.0)]);
        let wanted = [subject("Maths")];
        let expanded = SubjectAliases::builtin().expand(&p, wanted.iter()).unwrap();
        assert_eq!(expanded.score(&subject("Maths")).unwrap().value(), 70.0);
    }

    #[test]
    fn unrelated_subjects_pass_through() {
        let p = profile(&[("Biology", 60.0)]);
        let wanted = [subject("Home Science")];
        let expanded = SubjectAliases::builtin().expand(&p, wanted.iter()).unwrap();
        assert!(expanded.score(&subject("Home Science")).is_none());
        assert_eq!(expanded.len(), 1);
    }

    #[test]
    fn conflicting_alias_scores_are_rejected() {
        let p = profile(&[("Maths.", 82.0), ("Mathematics", 90.0)]);
        let wanted = [subject("Maths")];
        let err = SubjectAliases::builtin().expand(&p, wanted.iter()).unwrap_err();
        assert!(matches!(err, CliError::AliasConflict { .. }));
    }

    #[test]
    fn agreeing_aliases_are_fine() {
        let p = profile(&[("Maths.", 82.0), ("Mathematics", 82.0)]);
        let wanted = [subject("Maths")];
        let expanded = SubjectAliases::builtin().expand(&p, wanted.iter()).unwrap();
        assert_eq!(expanded.score(&subject("Maths")).unwrap().value(), 82.0);
    }
}
