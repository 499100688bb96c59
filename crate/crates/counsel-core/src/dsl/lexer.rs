use alloc::string::String;
use alloc::vec::Vec;

use super::{ParseDiagnostic, SourceSpan};
use crate::Severity;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum TokenKind {
    /// A bare word: keyword, name, or preset id.
    Word(String),
    /// A double-quoted name; `\"` and `\\` escapes are recognized.
    Quoted(String),
    Number { value: f64, is_int: bool },
    LBrace,
    RBrace,
    Colon,
    Slash,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub(crate) kind: TokenKind,
    pub(crate) span: SourceSpan,
}

fn is_word_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_word_continue(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.')
}

struct Cursor<'a> {
    rest: core::str::Chars<'a>,
    line: u32,
    column: u32,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.rest.clone().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.rest.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn span_here(&self, length: u32) -> SourceSpan {
        SourceSpan {
            line: self.line,
            column: self.column,
            length,
        }
    }
}

/// Splits input into tokens. Newlines are plain whitespace (LF and CRLF both
/// work) and `#` starts a comment running to the end of the line.
pub(crate) fn lex(text: &str) -> (Vec<Token>, Vec<ParseDiagnostic>) {
    let mut tokens = Vec::new();
    let mut diagnostics = Vec::new();
    let mut cur = Cursor {
        rest: text.chars(),
        line: 1,
        column: 1,
    };

    while let Some(c) = cur.peek() {
        if c == '\n' || c.is_whitespace() {
            cur.bump();
            continue;
        }
        if c == '#' {
            while let Some(c) = cur.peek() {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
            continue;
        }

        let start = cur.span_here(1);
        match c {
            '{' | '}' | ':' | '/' => {
                cur.bump();
                let kind = match c {
                    '{' => TokenKind::LBrace,
                    '}' => TokenKind::RBrace,
                    ':' => TokenKind::Colon,
                    _ => TokenKind::Slash,
                };
                tokens.push(Token { kind, span: start });
            }
            '"' => {
                cur.bump();
                let mut value = String::new();
                let mut length = 1u32;
                let mut terminated = false;
                while let Some(c) = cur.peek() {
                    if c == '\n' {
                        break;
                    }
                    cur.bump();
                    length += 1;
                    match c {
                        '"' => {
                            terminated = true;
                            break;
                        }
                        '\\' => match cur.peek() {
                            Some(esc @ ('"' | '\\')) => {
                                cur.bump();
                                length += 1;
                                value.push(esc);
                            }
                            _ => value.push('\\'),
                        },
                        _ => value.push(c),
                    }
                }
                let span = SourceSpan { length, ..start };
                if terminated {
                    tokens.push(Token {
                        kind: TokenKind::Quoted(value),
                        span,
                    });
                } else {
                    diagnostics.push(ParseDiagnostic {
                        severity: Severity::Error,
                        message: String::from("unterminated quoted name"),
                        span,
                    });
                }
            }
            c if c.is_ascii_digit() => {
                let mut raw = String::new();
                let mut is_int = true;
                while let Some(c) = cur.peek() {
                    if c.is_ascii_digit() {
                        raw.push(c);
                        cur.bump();
                    } else if c == '.' && is_int {
                        raw.push(c);
                        is_int = false;
                        cur.bump();
                    } else {
                        break;
                    }
                }
                let span = SourceSpan {
                    length: raw.chars().count() as u32,
                    ..start
                };
                match raw.parse::<f64>() {
                    Ok(value) => tokens.push(Token {
                        kind: TokenKind::Number { value, is_int },
                        span,
                    }),
                    Err(_) => diagnostics.push(ParseDiagnostic {
                        severity: Severity::Error,
                        message: alloc::format!("malformed number `{raw}`"),
                        span,
                    }),
                }
            }
            c if is_word_start(c) => {
                let mut raw = String::new();
                while let Some(c) = cur.peek() {
                    if is_word_continue(c) {
                        raw.push(c);
                        cur.bump();
                    } else {
                        break;
                    }
                }
                let span = SourceSpan {
                    length: raw.chars().count() as u32,
                    ..start
                };
                tokens.push(Token {
                    kind: TokenKind::Word(raw),
                    span,
                });
            }
            other => {
                cur.bump();
                diagnostics.push(ParseDiagnostic {
                    severity: Severity::Error,
                    message: alloc::format!("unexpected character `{other}`"),
                    span: start,
                });
            }
        }
    }

    (tokens, diagnostics)
}
