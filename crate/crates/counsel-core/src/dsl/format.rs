use alloc::format;
use alloc::string::String;

use super::parser::is_keyword;
use crate::fuzzy::Score;
use crate::rules::Rulebook;

/// Renders a weight: a fraction `num/den` when the weight sits within 1e-9
/// of one with denominator ≤ 12, otherwise the shortest decimal that parses
/// back to the same value.
pub fn format_weight(weight: f64) -> String {
    for den in 1u32..=12 {
        let num = (weight * den as f64 + 0.5) as u32;
        if num >= 1 && (num as f64 / den as f64 - weight).abs() <= 1e-9 {
            return if den == 1 {
                format!("{num}")
            } else {
                format!("{num}/{den}")
            };
        }
    }
    format!("{weight}")
}

fn format_score(score: Score) -> String {
    format!("{}", score.value())
}

/// Quotes a name when it would not survive bare lexing: non-word
/// characters, a non-letter start, or a keyword collision.
fn format_name(name: &str) -> String {
    let mut chars = name.chars();
    let bare_start = chars
        .next()
        .map(|c| c.is_alphabetic() || c == '_')
        .unwrap_or(false);
    let bare = bare_start
        && chars.all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
        && !is_keyword(name);
    if bare {
        return String::from(name);
    }
    let mut quoted = String::with_capacity(name.len() + 2);
    quoted.push('"');
    for c in name.chars() {
        if matches!(c, '"' | '\\') {
            quoted.push('\\');
        }
        quoted.push(c);
    }
    quoted.push('"');
    quoted
}

/// Renders a rulebook in canonical textual form. The output is
/// deterministic and parses back to an equal rulebook.
pub fn format_rulebook(rulebook: &Rulebook) -> String {
    let mut out = String::new();
    let categories = rulebook.category_set();

    if categories.is_custom() {
        out.push_str("categories custom\n");
        for (label, mf) in categories.entries() {
            out.push_str(&format!(
                "category {} ramp {} {} cutoff {}\n",
                format_name(label.as_str()),
                format_score(mf.rise_start()),
                format_score(mf.rise_end()),
                mf.cutoff()
                    .map(format_score)
                    .unwrap_or_else(|| String::from("none")),
            ));
        }
    } else {
        out.push_str(&format!(
            "categories {}\n",
            format_name(categories.preset_name())
        ));
    }

    for field in rulebook.fields() {
        out.push('\n');
        out.push_str(&format!("field {} {{\n", format_name(field.as_str())));
        for rule in rulebook.rules_for(field) {
            out.push_str(&format!("  rule {}: if ", format_name(rule.id())));
            for (i, clause) in rule.clauses().iter().enumerate() {
                if i > 0 {
                    out.push_str(" and ");
                }
                out.push_str(&format!(
                    "{} is {} weight {}",
                    format_name(clause.subject().as_str()),
                    format_name(clause.category().as_str()),
                    format_weight(clause.weight()),
                ));
            }
            out.push_str(&format!(" then {}\n", format_name(rule.consequent().as_str())));
        }
        out.push_str("}\n");
    }
    out
}
