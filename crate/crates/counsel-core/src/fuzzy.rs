//! Category membership curves on the 0–100 score scale.
//!
//! Every curve in this crate belongs to the ramp/plateau/cutoff family: zero
//! below `rise_start`, a linear ramp up to `rise_end`, a plateau at 1 up to
//! an optional `cutoff`, and zero above it. A [`CategorySet`] names a group
//! of such curves (for example Average / Good / Excellent) and evaluates a
//! score against all of them at once.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use thiserror::Error;

use crate::ident::{fold, Ident};

/// Preset whose Excellent ramp ends at 85, reproducing the reference grade
/// table exactly. This is the default category set.
pub const PRESET_TABLE1_FITTED: &str = "table1-fitted";

/// Preset whose Excellent ramp ends at 90, matching the published closed
/// forms of the three curves rather than the worked table.
pub const PRESET_PRINTED_EQ3: &str = "printed-eq3";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FuzzyError {
    #[error("score {0} is outside the 0..=100 scale")]
    ScoreOutOfRange(f64),
    #[error("membership grade {0} is outside 0..=1")]
    GradeOutOfRange(f64),
    #[error("category label must not be empty")]
    EmptyCategoryLabel,
    #[error("ramp start {start} must lie strictly below ramp end {end}")]
    InvalidRamp { start: f64, end: f64 },
    #[error("cutoff {cutoff} must not lie below ramp end {end}")]
    CutoffBeforeRampEnd { end: f64, cutoff: f64 },
    #[error("category set must contain at least one category")]
    EmptyCategorySet,
    #[error("duplicate category label `{0}`")]
    DuplicateCategory(String),
    #[error("unknown preset `{0}` (valid presets: {PRESET_TABLE1_FITTED}, {PRESET_PRINTED_EQ3})")]
    UnknownPreset(String),
    #[error("invalid sample range: need x_min < x_max and at least 2 points, got [{x_min}, {x_max}] with {points}")]
    InvalidSampleRange { x_min: f64, x_max: f64, points: usize },
}

/// A mark or vocational score on the 0–100 scale.
///
/// Out-of-range input is rejected at construction rather than clamped;
/// scores outside the scale indicate corrupted data.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Score(f64);

impl Score {
    pub fn new(value: f64) -> Result<Self, FuzzyError> {
        if (0.0..=100.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(FuzzyError::ScoreOutOfRange(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Score {
    type Error = FuzzyError;

    fn try_from(value: f64) -> Result<Self, FuzzyError> {
        Score::new(value)
    }
}

impl core::fmt::Display for Score {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A degree of membership in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MembershipGrade(f64);

impl MembershipGrade {
    pub fn new(value: f64) -> Result<Self, FuzzyError> {
        if (0.0..=1.0).contains(&value) {
            Ok(Self(value))
        } else {
            Err(FuzzyError::GradeOutOfRange(value))
        }
    }

    /// Clamps float slack from weighted sums back into `[0, 1]`.
    pub(crate) fn clamped(value: f64) -> Self {
        Self(value.clamp(0.0, 1.0))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl core::fmt::Display for MembershipGrade {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The name of a linguistic category such as Average, Good, or Excellent.
/// Compared case-insensitively with whitespace collapsed.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CategoryLabel(Ident);

impl CategoryLabel {
    pub fn new(name: &str) -> Result<Self, FuzzyError> {
        Ident::new(name)
            .map(Self)
            .ok_or(FuzzyError::EmptyCategoryLabel)
    }

    pub fn as_str(&self) -> &str {
        self.0.display()
    }

    pub(crate) fn key(&self) -> &str {
        self.0.key()
    }
}

impl core::fmt::Display for CategoryLabel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        self.0.fmt(f)
    }
}

/// A ramp/plateau/cutoff membership curve.
///
/// Evaluates to 0 below `rise_start`, ramps linearly from 0 to 1 over
/// `[rise_start, rise_end]`, holds 1 up to `cutoff`, and drops to 0 strictly
/// above it. `cutoff: None` means the plateau extends to the top of the
/// scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipFunction {
    rise_start: Score,
    rise_end: Score,
    cutoff: Option<Score>,
}

impl MembershipFunction {
    pub fn new(rise_start: Score, rise_end: Score, cutoff: Option<Score>) -> Result<Self, FuzzyError> {
        if rise_start.value() >= rise_end.value() {
            return Err(FuzzyError::InvalidRamp {
                start: rise_start.value(),
                end: rise_end.value(),
            });
        }
        if let Some(c) = cutoff {
            if c.value() < rise_end.value() {
                return Err(FuzzyError::CutoffBeforeRampEnd {
                    end: rise_end.value(),
                    cutoff: c.value(),
                });
            }
        }
        Ok(Self {
            rise_start,
            rise_end,
            cutoff,
        })
    }

    /// Convenience constructor from raw breakpoints.
    pub fn ramp(rise_start: f64, rise_end: f64, cutoff: Option<f64>) -> Result<Self, FuzzyError> {
        Self::new(
            Score::new(rise_start)?,
            Score::new(rise_end)?,
            cutoff.map(Score::new).transpose()?,
        )
    }

    pub fn rise_start(&self) -> Score {
        self.rise_start
    }

    pub fn rise_end(&self) -> Score {
        self.rise_end
    }

    pub fn cutoff(&self) -> Option<Score> {
        self.cutoff
    }

    /// Evaluates the curve at a score.
    ///
    /// Endpoints: the value at `rise_start` is 0, at `rise_end` it is 1, at
    /// `cutoff` still 1, and strictly above a finite cutoff it is 0.
    pub fn evaluate(&self, x: Score) -> MembershipGrade {
        let x = x.value();
        let a = self.rise_start.value();
        let b = self.rise_end.value();
        let grade = if x < a {
            0.0
        } else if x <= b {
            (x - a) / (b - a)
        } else {
            match self.cutoff {
                Some(c) if x > c.value() => 0.0,
                _ => 1.0,
            }
        };
        MembershipGrade::clamped(grade)
    }
}

/// An ordered set of labelled membership curves.
#[derive(Debug, Clone, PartialEq)]
pub struct CategorySet {
    preset_name: String,
    entries: Vec<(CategoryLabel, MembershipFunction)>,
}

impl CategorySet {
    /// Builds a set from label/curve pairs, in order. Labels must be unique
    /// under case-insensitive comparison and at least one entry is required.
    pub fn new(
        preset_name: &str,
        entries: Vec<(CategoryLabel, MembershipFunction)>,
    ) -> Result<Self, FuzzyError> {
        if entries.is_empty() {
            return Err(FuzzyError::EmptyCategorySet);
        }
        for (i, (label, _)) in entries.iter().enumerate() {
            if entries[..i].iter().any(|(seen, _)| seen == label) {
                return Err(FuzzyError::DuplicateCategory(label.as_str().to_string()));
            }
        }
        Ok(Self {
            preset_name: preset_name.to_string(),
            entries,
        })
    }

    /// Builds a set with the preset name `custom`.
    pub fn custom(entries: Vec<(CategoryLabel, MembershipFunction)>) -> Result<Self, FuzzyError> {
        Self::new("custom", entries)
    }

    pub fn preset_name(&self) -> &str {
        &self.preset_name
    }

    pub fn is_custom(&self) -> bool {
        self.preset_name == "custom"
    }

    pub fn entries(&self) -> impl Iterator<Item = (&CategoryLabel, &MembershipFunction)> {
        self.entries.iter().map(|(l, f)| (l, f))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Looks a curve up by label, case-insensitively.
    pub fn function(&self, label: &str) -> Option<&MembershipFunction> {
        let key = fold(label);
        self.entries
            .iter()
            .find(|(l, _)| l.key() == key)
            .map(|(_, f)| f)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.function(label).is_some()
    }

    /// Evaluates every category at a score, in declaration order.
    ///
    /// Categories are not a partition: grades are independent and need not
    /// sum to 1.
    pub fn grades(&self, x: Score) -> Vec<(CategoryLabel, MembershipGrade)> {
        self.entries
            .iter()
            .map(|(label, mf)| (label.clone(), mf.evaluate(x)))
            .collect()
    }
}

/// Returns one of the two shipped category sets by name (case-insensitive).
///
/// Both share Average (40, 55, 60) and Good (55, 70, 75); they differ only
/// in where the Excellent ramp ends (85 for `table1-fitted`, 90 for
/// `printed-eq3`). Neither Excellent curve has a finite cutoff.
pub fn preset_category_set(name: &str) -> Result<CategorySet, FuzzyError> {
    let excellent_rise_end = match fold(name).as_str() {
        k if k == PRESET_TABLE1_FITTED => 85.0,
        k if k == PRESET_PRINTED_EQ3 => 90.0,
        _ => return Err(FuzzyError::UnknownPreset(name.to_string())),
    };
    let entries = alloc::vec![
        (
            CategoryLabel::new("Average")?,
            MembershipFunction::ramp(40.0, 55.0, Some(60.0))?,
        ),
        (
            CategoryLabel::new("Good")?,
            MembershipFunction::ramp(55.0, 70.0, Some(75.0))?,
        ),
        (
            CategoryLabel::new("Excellent")?,
            MembershipFunction::ramp(70.0, excellent_rise_end, None)?,
        ),
    ];
    CategorySet::new(&fold(name), entries)
}

/// The preset names accepted by [`preset_category_set`].
pub fn preset_names() -> [&'static str; 2] {
    [PRESET_TABLE1_FITTED, PRESET_PRINTED_EQ3]
}

/// Samples a curve at `points` evenly spaced positions across
/// `[x_min, x_max]`, both ends included.
pub fn sample_membership(
    mf: &MembershipFunction,
    x_min: Score,
    x_max: Score,
    points: usize,
) -> Result<Vec<(Score, MembershipGrade)>, FuzzyError> {
    if points < 2 || x_min.value() >= x_max.value() {
        return Err(FuzzyError::InvalidSampleRange {
            x_min: x_min.value(),
            x_max: x_max.value(),
            points,
        });
    }
    let lo = x_min.value();
    let span = x_max.value() - lo;
    let last = (points - 1) as f64;
    let mut samples = Vec::with_capacity(points);
    for i in 0..points {
        let x = if i == points - 1 {
            x_max
        } else {
            Score::new(lo + span * i as f64 / last).expect("interpolant stays inside [x_min, x_max]")
        };
        samples.push((x, mf.evaluate(x)));
    }
    Ok(samples)
}
