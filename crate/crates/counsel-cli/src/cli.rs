//! The `counsel` command line.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use counsel_core::{
    assess_profile, builtin_rulebook, parse_rulebook, parse_rulebook_full, rank_fields,
    KnowledgeBase, Profile, Rulebook, Severity,
};

use crate::aliases::SubjectAliases;
use crate::error::CliError;
use crate::kb_io::{kb_diagnostics, load_kb};
use crate::profiles::load_profiles;
use crate::report::{
    membership_csv, render_recommendation, render_report, Report, ReportFormat, StudentReport,
};

#[derive(Parser)]
#[command(
    name = "counsel",
    version,
    about = "Assess student profiles with fuzzy rulebooks and map career fields to courses, institutes, and jobs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => ReportFormat::Text,
            Format::Json => ReportFormat::Json,
        }
    }
}

#[derive(Args)]
struct RulesArg {
    /// Rulebook file (.frules); the built-in rulebook when omitted
    #[arg(long)]
    rules: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Assess student profiles and rank career fields (phase 1)
    Analyze {
        #[command(flatten)]
        rules: RulesArg,
        /// JSON profile file
        #[arg(long)]
        profiles: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Look up courses, institutes, and jobs for a field (phase 2)
    Recommend {
        /// JSON knowledge-base file
        #[arg(long)]
        kb: PathBuf,
        /// Career field to look up
        #[arg(long)]
        field: String,
        /// Keep only institutes in this region
        #[arg(long)]
        region: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Phase 1, then phase 2 for each student's top-ranked field
    Pipeline {
        #[command(flatten)]
        rules: RulesArg,
        #[arg(long)]
        profiles: PathBuf,
        #[arg(long)]
        kb: PathBuf,
        #[arg(long)]
        region: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List diagnostics for a rulebook or a knowledge base
    #[command(group = clap::ArgGroup::new("target").required(true).multiple(false))]
    Validate {
        #[arg(long, group = "target")]
        rules: Option<PathBuf>,
        #[arg(long, group = "target")]
        kb: Option<PathBuf>,
    },
    /// Sample a membership curve into x,grade CSV rows over 0..=100
    Plot {
        /// Take the category set from this rulebook file
        #[arg(long, conflicts_with = "preset")]
        rules: Option<PathBuf>,
        /// Take the category set from a preset (table1-fitted, printed-eq3)
        #[arg(long)]
        preset: Option<String>,
        /// Category whose curve to sample
        #[arg(long)]
        category: String,
        /// Output CSV path
        #[arg(long)]
        out: PathBuf,
        /// Number of sample points, endpoints included
        #[arg(long, default_value_t = 201)]
        samples: usize,
    },
}

/// Runs the command line and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version and 2 for usage errors.
            let code = if e.kind() == ErrorKind::DisplayHelp || e.kind() == ErrorKind::DisplayVersion
            {
                0
            } else {
                2
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            for line in e.detail_lines() {
                eprintln!("  {line}");
            }
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> Result<i32, CliError> {
    match command {
        Command::Analyze { rules, profiles, format } => {
            let rulebook = load_rulebook(rules.rules.as_deref())?;
            let report = analyze(&rulebook, &profiles, None)?;
            print!("{}", render_report(&report, format.into()));
            Ok(0)
        }
        Command::Recommend { kb, field, region, format } => {
            let kb = load_kb(&kb)?;
            let recommendation = kb.recommend(&field, region.as_deref())?;
            print!("{}", render_recommendation(&recommendation, format.into()));
            Ok(0)
        }
        Command::Pipeline { rules, profiles, kb, region, format } => {
            let rulebook = load_rulebook(rules.rules.as_deref())?;
            let kb = load_kb(&kb)?;
            let report = analyze(&rulebook, &profiles, Some((&kb, region.as_deref())))?;
            print!("{}", render_report(&report, format.into()));
            Ok(0)
        }
        Command::Validate { rules, kb } => match (rules, kb) {
            (Some(path), None) => validate_rules(&path),
            (None, Some(path)) => validate_kb(&path),
            _ => unreachable!("clap enforces exactly one target"),
        },
        Command::Plot { rules, preset, category, out, samples } => {
            plot(rules.as_deref(), preset.as_deref(), &category, &out, samples)
        }
    }
}

fn load_rulebook(path: Option<&Path>) -> Result<Rulebook, CliError> {
    match path {
        None => Ok(builtin_rulebook()),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            parse_rulebook(&text).map_err(|diagnostics| CliError::RulebookSyntax {
                path: path.to_path_buf(),
                diagnostics,
            })
        }
    }
}

/// Phase 1 over every profile in the file, in file order; with a knowledge
/// base attached, phase 2 runs on each student's top-ranked field.
fn analyze(
    rulebook: &Rulebook,
    profiles_path: &Path,
    phase2: Option<(&KnowledgeBase, Option<&str>)>,
) -> Result<Report, CliError> {
    let document = load_profiles(profiles_path)?;
    let aliases = SubjectAliases::builtin();
    let mut report = Report::default();
    for profile in document.profiles() {
        report.students.push(assess_student(rulebook, &aliases, profile, phase2)?);
    }
    Ok(report)
}

fn assess_student(
    rulebook: &Rulebook,
    aliases: &SubjectAliases,
    profile: &Profile,
    phase2: Option<(&KnowledgeBase, Option<&str>)>,
) -> Result<StudentReport, CliError> {
    let expanded = aliases.expand(profile, rulebook.subjects())?;
    let assessments = assess_profile(rulebook, &expanded)?;
    let ranking = if assessments.is_empty() {
        None
    } else {
        Some(rank_fields(&assessments)?)
    };
    let mut notes = Vec::new();
    let recommendation = match (&ranking, phase2) {
        (Some(ranking), Some((kb, region))) => {
            let top = ranking.top().field.as_str();
            match kb.recommend(top, region) {
                Ok(rec) => Some(rec),
                Err(counsel_core::RelationError::UnknownField(field)) => {
                    notes.push(format!("top field `{field}` is not in the knowledge base"));
                    None
                }
                Err(e) => return Err(e.into()),
            }
        }
        _ => None,
    };
    Ok(StudentReport {
        student_id: profile.student_id().to_string(),
        assessments,
        ranking,
        recommendation,
        notes,
    })
}

fn validate_rules(path: &Path) -> Result<i32, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let outcome = parse_rulebook_full(&text);
    for diagnostic in &outcome.diagnostics {
        println!("{diagnostic}");
    }
    if outcome.has_errors() {
        Ok(1)
    } else {
        println!("ok: {} diagnostic(s)", outcome.diagnostics.len());
        Ok(0)
    }
}

fn validate_kb(path: &Path) -> Result<i32, CliError> {
    let (_, diagnostics) = kb_diagnostics(path)?;
    for diagnostic in &diagnostics {
        println!("{}: {}", diagnostic.severity(), diagnostic);
    }
    if diagnostics.iter().any(|d| d.severity() == Severity::Error) {
        Ok(1)
    } else {
        println!("ok: {} diagnostic(s)", diagnostics.len());
        Ok(0)
    }
}

fn plot(
    rules: Option<&Path>,
    preset: Option<&str>,
    category: &str,
    out: &Path,
    samples: usize,
) -> Result<i32, CliError> {
    let categories = match (rules, preset) {
        (Some(path), None) => load_rulebook(Some(path))?.category_set().clone(),
        (None, Some(name)) => counsel_core::preset_category_set(name)?,
        (None, None) => builtin_rulebook().category_set().clone(),
        (Some(_), Some(_)) => unreachable!("clap marks --rules and --preset as conflicting"),
    };
    let Some(mf) = categories.function(category) else {
        let known: Vec<&str> = categories.entries().map(|(l, _)| l.as_str()).collect();
        return Err(CliError::UnknownCategory {
            category: category.to_string(),
            known: known.join(", "),
        });
    };
    let csv = membership_csv(mf, samples)?;
    fs::write(out, csv).map_err(|source| CliError::Io {
        path: out.to_path_buf(),
        source,
    })?;
    Ok(0)
}
