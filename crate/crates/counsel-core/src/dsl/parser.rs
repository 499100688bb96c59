use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::lexer::{lex, Token, TokenKind};
use super::{ParseDiagnostic, ParseOutcome, SourceSpan};
use crate::fuzzy::{
    preset_category_set, CategoryLabel, CategorySet, MembershipFunction, Score,
};
use crate::ident::fold;
use crate::profile::SubjectId;
use crate::rules::{validate_rulebook, Clause, FieldName, Rule, Rulebook};
use crate::Severity;

const KEYWORDS: &[&str] = &[
    "categories", "category", "field", "rule", "if", "is", "and", "then", "weight", "ramp",
    "cutoff", "none",
];

pub(crate) fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&fold(word).as_str())
}

struct CategoryStmt {
    name: String,
    name_span: SourceSpan,
    rise_start: (f64, SourceSpan),
    rise_end: (f64, SourceSpan),
    cutoff: Option<(f64, SourceSpan)>,
}

struct ClauseStmt {
    subject: (String, SourceSpan),
    category: (String, SourceSpan),
    weight: (f64, SourceSpan),
}

struct RuleStmt {
    id: (String, SourceSpan),
    clauses: Vec<ClauseStmt>,
    consequent: (String, SourceSpan),
}

struct FieldBlock {
    name: (String, SourceSpan),
    rules: Vec<RuleStmt>,
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    diagnostics: Vec<ParseDiagnostic>,
    end_span: SourceSpan,
}

impl Parser {
    fn new(text: &str) -> Self {
        let (tokens, diagnostics) = lex(text);
        let end_span = tokens
            .last()
            .map(|t| SourceSpan {
                line: t.span.line,
                column: t.span.column + t.span.length,
                length: 0,
            })
            .unwrap_or(SourceSpan {
                line: 1,
                column: 1,
                length: 0,
            });
        Self {
            tokens,
            pos: 0,
            diagnostics,
            end_span,
        }
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let token = self.tokens.get(self.pos).cloned();
        if token.is_some() {
            self.pos += 1;
        }
        token
    }

    fn here(&self) -> SourceSpan {
        self.peek().map(|t| t.span).unwrap_or(self.end_span)
    }

    fn error(&mut self, span: SourceSpan, message: impl Into<String>) {
        self.diagnostics.push(ParseDiagnostic {
            severity: Severity::Error,
            message: message.into(),
            span,
        });
    }

    fn warn(&mut self, span: SourceSpan, message: impl Into<String>) {
        self.diagnostics.push(ParseDiagnostic {
            severity: Severity::Warning,
            message: message.into(),
            span,
        });
    }

    fn at_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Some(Token { kind: TokenKind::Word(w), .. }) if fold(w) == kw)
    }

    fn eat_keyword(&mut self, kw: &str) -> Option<SourceSpan> {
        if self.at_keyword(kw) {
            self.bump().map(|t| t.span)
        } else {
            None
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> Option<SourceSpan> {
        if let Some(span) = self.eat_keyword(kw) {
            return Some(span);
        }
        let span = self.here();
        let found = self.describe_current();
        self.error(span, format!("expected `{kw}`, found {found}"));
        None
    }

    fn expect_token(&mut self, kind: &TokenKind, what: &str) -> Option<SourceSpan> {
        if self.peek().map(|t| &t.kind) == Some(kind) {
            return self.bump().map(|t| t.span);
        }
        let span = self.here();
        let found = self.describe_current();
        self.error(span, format!("expected {what}, found {found}"));
        None
    }

    fn describe_current(&self) -> String {
        match self.peek() {
            None => String::from("end of input"),
            Some(t) => match &t.kind {
                TokenKind::Word(w) => format!("`{w}`"),
                TokenKind::Quoted(q) => format!("\"{q}\""),
                TokenKind::Number { value, .. } => format!("number {value}"),
                TokenKind::LBrace => String::from("`{`"),
                TokenKind::RBrace => String::from("`}`"),
                TokenKind::Colon => String::from("`:`"),
                TokenKind::Slash => String::from("`/`"),
            },
        }
    }

    /// A name: bare word (keywords must be quoted) or quoted string.
    fn expect_name(&mut self, what: &str) -> Option<(String, SourceSpan)> {
        match self.peek().cloned() {
            Some(Token { kind: TokenKind::Word(w), span }) => {
                if is_keyword(&w) {
                    self.error(
                        span,
                        format!("keyword `{w}` cannot be used as {what}; quote it"),
                    );
                    return None;
                }
                self.bump();
                Some((w, span))
            }
            Some(Token { kind: TokenKind::Quoted(q), span }) => {
                self.bump();
                Some((q, span))
            }
            _ => {
                let span = self.here();
                let found = self.describe_current();
                self.error(span, format!("expected {what}, found {found}"));
                None
            }
        }
    }

    /// NUMBER := DECIMAL | INT "/" INT
    fn expect_number(&mut self, what: &str) -> Option<(f64, SourceSpan)> {
        match self.peek().cloned() {
            Some(Token { kind: TokenKind::Number { value, is_int }, span }) => {
                self.bump();
                if matches!(self.peek(), Some(Token { kind: TokenKind::Slash, .. })) {
                    self.bump();
                    let den = match self.peek().cloned() {
                        Some(Token { kind: TokenKind::Number { value, is_int }, span }) => {
                            self.bump();
                            (value, is_int, span)
                        }
                        _ => {
                            let span = self.here();
                            let found = self.describe_current();
                            self.error(span, format!("expected fraction denominator, found {found}"));
                            return None;
                        }
                    };
                    if !is_int || !den.1 {
                        self.error(span, "fraction parts must be integers");
                        return None;
                    }
                    if den.0 == 0.0 {
                        self.error(den.2, "fraction denominator must not be zero");
                        return None;
                    }
                    return Some((value / den.0, span));
                }
                Some((value, span))
            }
            _ => {
                let span = self.here();
                let found = self.describe_current();
                self.error(span, format!("expected {what}, found {found}"));
                None
            }
        }
    }

    /// Skips tokens until a statement boundary: one of the statement
    /// keywords, a closing brace, or end of input. Callers that might
    /// already sit on a boundary token must consume it first or the parse
    /// loop would not advance.
    fn recover_to_sync(&mut self) {
        while let Some(token) = self.peek() {
            match &token.kind {
                TokenKind::RBrace => return,
                TokenKind::Word(w) => {
                    let key = fold(w);
                    if matches!(key.as_str(), "categories" | "category" | "field" | "rule") {
                        return;
                    }
                }
                _ => {}
            }
            self.bump();
        }
    }

    fn parse_category_stmt(&mut self) -> Option<CategoryStmt> {
        self.eat_keyword("category")?;
        let (name, name_span) = self.expect_name("a category name")?;
        self.expect_keyword("ramp")?;
        let rise_start = self.expect_number("a ramp start score")?;
        let rise_end = self.expect_number("a ramp end score")?;
        self.expect_keyword("cutoff")?;
        let cutoff = if self.eat_keyword("none").is_some() {
            None
        } else {
            Some(self.expect_number("a cutoff score or `none`")?)
        };
        Some(CategoryStmt {
            name,
            name_span,
            rise_start,
            rise_end,
            cutoff,
        })
    }

    fn parse_clause(&mut self) -> Option<ClauseStmt> {
        let subject = self.expect_name("a subject name")?;
        self.expect_keyword("is")?;
        let category = self.expect_name("a category name")?;
        self.expect_keyword("weight")?;
        let weight = self.expect_number("a weight")?;
        Some(ClauseStmt {
            subject,
            category,
            weight,
        })
    }

    fn parse_rule(&mut self) -> Option<RuleStmt> {
        self.eat_keyword("rule")?;
        let id = self.expect_name("a rule id")?;
        self.expect_token(&TokenKind::Colon, "`:`")?;
        self.expect_keyword("if")?;
        let mut clauses = Vec::new();
        clauses.push(self.parse_clause()?);
        while self.eat_keyword("and").is_some() {
            clauses.push(self.parse_clause()?);
        }
        self.expect_keyword("then")?;
        let consequent = self.expect_name("a consequent category")?;
        Some(RuleStmt {
            id,
            clauses,
            consequent,
        })
    }

    fn parse_field_block(&mut self) -> Option<FieldBlock> {
        self.eat_keyword("field")?;
        let name = self.expect_name("a field name")?;
        self.expect_token(&TokenKind::LBrace, "`{`")?;
        let mut rules = Vec::new();
        loop {
            if self.at_keyword("rule") {
                match self.parse_rule() {
                    Some(rule) => rules.push(rule),
                    None => self.recover_to_sync(),
                }
            } else if matches!(self.peek(), Some(Token { kind: TokenKind::RBrace, .. })) {
                self.bump();
                break;
            } else if self.peek().is_none() {
                let span = self.here();
                self.error(span, format!("unclosed field block `{}`", name.0));
                break;
            } else if self.at_keyword("field")
                || self.at_keyword("categories")
                || self.at_keyword("category")
            {
                // The block was evidently never closed; hand the keyword
                // back to the top level.
                let span = self.here();
                self.error(span, format!("missing `}}` to close field block `{}`", name.0));
                break;
            } else {
                let span = self.here();
                let found = self.describe_current();
                self.error(span, format!("expected `rule` or `}}` in field block, found {found}"));
                self.bump();
                self.recover_to_sync();
            }
        }
        if rules.is_empty() {
            self.error(name.1, format!("field `{}` must contain at least one rule", name.0));
        }
        Some(FieldBlock { name, rules })
    }

    fn parse_program(&mut self) -> (Option<(String, SourceSpan)>, Vec<CategoryStmt>, Vec<FieldBlock>) {
        let preset = if self.eat_keyword("categories").is_some() {
            self.expect_name("a preset name after `categories`")
        } else {
            let span = self.here();
            self.error(span, "missing categories declaration");
            None
        };

        let mut category_stmts = Vec::new();
        let mut field_blocks = Vec::new();
        loop {
            if self.at_keyword("category") {
                match self.parse_category_stmt() {
                    Some(stmt) => category_stmts.push(stmt),
                    None => self.recover_to_sync(),
                }
            } else if self.at_keyword("field") {
                match self.parse_field_block() {
                    Some(block) => field_blocks.push(block),
                    None => self.recover_to_sync(),
                }
            } else if self.peek().is_none() {
                break;
            } else {
                let span = self.here();
                let found = self.describe_current();
                self.error(span, format!("expected `field` or `category`, found {found}"));
                self.bump();
                self.recover_to_sync();
            }
        }
        if preset.is_some() && field_blocks.is_empty() {
            let span = self.end_span;
            self.error(span, "expected at least one field block");
        }
        (preset, category_stmts, field_blocks)
    }
}

fn lower_category_set(
    parser: &mut Parser,
    preset: Option<(String, SourceSpan)>,
    stmts: &[CategoryStmt],
) -> Option<CategorySet> {
    let (preset_name, preset_span) = preset?;
    if fold(&preset_name) == "custom" {
        if stmts.is_empty() {
            parser.error(
                preset_span,
                "`categories custom` requires at least one `category` statement",
            );
            return None;
        }
        let mut entries = Vec::new();
        let mut failed = false;
        for (i, stmt) in stmts.iter().enumerate() {
            if stmts[..i]
                .iter()
                .any(|earlier| fold(&earlier.name) == fold(&stmt.name))
            {
                parser.error(
                    stmt.name_span,
                    format!("duplicate category `{}`", stmt.name),
                );
                failed = true;
                continue;
            }
            let label = match CategoryLabel::new(&stmt.name) {
                Ok(label) => label,
                Err(e) => {
                    parser.error(stmt.name_span, e.to_string());
                    failed = true;
                    continue;
                }
            };
            let mut score = |value: (f64, SourceSpan)| match Score::new(value.0) {
                Ok(s) => Some(s),
                Err(e) => {
                    parser.error(value.1, e.to_string());
                    None
                }
            };
            let (rise_start, rise_end) = match (score(stmt.rise_start), score(stmt.rise_end)) {
                (Some(a), Some(b)) => (a, b),
                _ => {
                    failed = true;
                    continue;
                }
            };
            let cutoff = match stmt.cutoff.map(&mut score) {
                Some(None) => {
                    failed = true;
                    continue;
                }
                Some(Some(c)) => Some(c),
                None => None,
            };
            match MembershipFunction::new(rise_start, rise_end, cutoff) {
                Ok(mf) => entries.push((label, mf)),
                Err(e) => {
                    parser.error(stmt.name_span, e.to_string());
                    failed = true;
                }
            }
        }
        if failed || entries.is_empty() {
            return None;
        }
        Some(CategorySet::custom(entries).expect("entries checked above"))
    } else {
        if let Some(first) = stmts.first() {
            parser.error(
                first.name_span,
                "`category` statements require `categories custom`",
            );
        }
        match preset_category_set(&preset_name) {
            Ok(cs) => Some(cs),
            Err(e) => {
                parser.error(preset_span, e.to_string());
                None
            }
        }
    }
}

struct LoweredRules {
    rules: Vec<Rule>,
    /// (field key, rule-id key, id span) per successfully lowered rule.
    spans: Vec<(String, String, SourceSpan)>,
}

fn lower_rules(parser: &mut Parser, blocks: &[FieldBlock]) -> LoweredRules {
    let mut rules = Vec::new();
    let mut spans = Vec::new();
    let mut seen_fields: Vec<String> = Vec::new();

    for block in blocks {
        let field_key = fold(&block.name.0);
        if seen_fields.contains(&field_key) {
            parser.warn(
                block.name.1,
                format!("field `{}` is split across multiple blocks; rules are merged", block.name.0),
            );
        } else {
            seen_fields.push(field_key);
        }
        let field = match FieldName::new(&block.name.0) {
            Ok(field) => field,
            Err(e) => {
                parser.error(block.name.1, e.to_string());
                continue;
            }
        };
        for rule in &block.rules {
            if rule.id.0.trim().is_empty() {
                parser.error(rule.id.1, "rule id must not be empty");
                continue;
            }
            let consequent = match CategoryLabel::new(&rule.consequent.0) {
                Ok(label) => label,
                Err(e) => {
                    parser.error(rule.consequent.1, e.to_string());
                    continue;
                }
            };
            let mut clauses = Vec::with_capacity(rule.clauses.len());
            let mut clause_failed = false;
            for clause in &rule.clauses {
                let subject = match SubjectId::new(&clause.subject.0) {
                    Ok(subject) => subject,
                    Err(e) => {
                        parser.error(clause.subject.1, e.to_string());
                        clause_failed = true;
                        continue;
                    }
                };
                let category = match CategoryLabel::new(&clause.category.0) {
                    Ok(category) => category,
                    Err(e) => {
                        parser.error(clause.category.1, e.to_string());
                        clause_failed = true;
                        continue;
                    }
                };
                match Clause::new(subject, category, clause.weight.0) {
                    Ok(clause) => clauses.push(clause),
                    Err(e) => {
                        parser.error(clause.weight.1, e.to_string());
                        clause_failed = true;
                    }
                }
            }
            if clause_failed {
                continue;
            }
            spans.push((
                fold(block.name.0.as_str()),
                fold(&rule.id.0),
                rule.id.1,
            ));
            rules.push(Rule::from_parts(&rule.id.0, field.clone(), clauses, consequent));
        }
    }
    LoweredRules { rules, spans }
}

pub(crate) fn parse(text: &str) -> ParseOutcome {
    let mut parser = Parser::new(text);
    let (preset, category_stmts, field_blocks) = parser.parse_program();

    let category_set = lower_category_set(&mut parser, preset, &category_stmts);
    let lowered = lower_rules(&mut parser, &field_blocks);

    let rulebook = category_set.map(|cs| Rulebook::from_parts(cs, lowered.rules));

    if let Some(rb) = &rulebook {
        for diagnostic in validate_rulebook(rb) {
            let field_key = fold(diagnostic.field());
            let rule_key = diagnostic.rule_id().map(fold);
            let matches: Vec<SourceSpan> = lowered
                .spans
                .iter()
                .filter(|(f, r, _)| {
                    *f == field_key && rule_key.as_deref().map(|k| k == r).unwrap_or(true)
                })
                .map(|(_, _, span)| *span)
                .collect();
            // Duplicate-id findings point at the later occurrence.
            let span = match matches.len() {
                0 => parser.end_span,
                1 => matches[0],
                n => matches[n - 1],
            };
            parser.error(span, diagnostic.to_string());
        }
    }

    let has_errors = parser
        .diagnostics
        .iter()
        .any(|d| d.severity == Severity::Error);
    ParseOutcome {
        rulebook: rulebook.filter(|_| !has_errors),
        diagnostics: parser.diagnostics,
    }
}
