use std::fmt;

use thiserror::Error;

/// 1-based source position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
#[error("{pos}: {message}{}", expected_suffix(.expected))]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
    /// What the parser would have accepted here.
    pub expected: Vec<String>,
}

fn expected_suffix(expected: &[String]) -> String {
    if expected.is_empty() {
        String::new()
    } else {
        format!(" (expected {})", expected.join(" or "))
    }
}

impl ParseError {
    pub fn new(pos: Pos, message: impl Into<String>) -> Self {
        Self { pos, message: message.into(), expected: Vec::new() }
    }

    pub fn expecting(pos: Pos, message: impl Into<String>, expected: &[&str]) -> Self {
        Self { pos, message: message.into(), expected: expected.iter().map(|s| s.to_string()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Sexp {
    Atom { text: String, quoted: bool, pos: Pos },
    List { items: Vec<Sexp>, pos: Pos },
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom { pos, .. } | Sexp::List { pos, .. } => *pos,
        }
    }

    /// The text of an unquoted atom.
    pub fn symbol(&self) -> Option<&str> {
        match self {
            Sexp::Atom { text, quoted: false, .. } => Some(text),
            _ => None,
        }
    }

    /// A list whose head is a symbol, split into head and arguments.
    pub fn form(&self) -> Option<(&str, &[Sexp])> {
        match self {
            Sexp::List { items, .. } => {
                let (head, rest) = items.split_first()?;
                Some((head.symbol()?, rest))
            }
            Sexp::Atom { .. } => None,
        }
    }
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Lexer<'_> {
    fn bump(&mut self) -> Option<char> {
        let ch = self.chars.next()?;
        if ch == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(ch)
    }

    fn skip_trivia(&mut self) {
        while let Some(&ch) = self.chars.peek() {
            if ch == ';' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if ch.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn expr(&mut self) -> Result<Option<Sexp>, ParseError> {
        self.skip_trivia();
        let start = self.pos;
        let Some(&ch) = self.chars.peek() else {
            return Ok(None);
        };
        match ch {
            '(' => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.chars.peek() {
                        None => {
                            return Err(ParseError::expecting(
                                self.pos,
                                "unexpected end of input",
                                &["`)`", "expression"],
                            ))
                        }
                        Some(')') => {
                            self.bump();
                            return Ok(Some(Sexp::List { items, pos: start }));
                        }
                        Some(_) => items.push(self.expr()?.expect("input is not empty")),
                    }
                }
            }
            ')' => Err(ParseError::expecting(start, "unbalanced `)`", &["expression", "end of input"])),
            '"' => {
                self.bump();
                let mut text = String::new();
                loop {
                    match self.bump() {
                        None => return Err(ParseError::expecting(self.pos, "unterminated string", &["`\"`"])),
                        Some('"') => break,
                        Some('\\') => match self.bump() {
                            Some(c @ ('"' | '\\')) => text.push(c),
                            _ => return Err(ParseError::new(self.pos, "invalid escape in string")),
                        },
                        Some(c) => text.push(c),
                    }
                }
                Ok(Some(Sexp::Atom { text, quoted: true, pos: start }))
            }
            _ => {
                let mut text = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || matches!(c, '(' | ')' | ';' | '"') {
                        break;
                    }
                    text.push(c);
                    self.bump();
                }
                Ok(Some(Sexp::Atom { text, quoted: false, pos: start }))
            }
        }
    }
}

/// Read every top-level expression of `src`.
pub fn read_all(src: &str) -> Result<Vec<Sexp>, ParseError> {
    let mut lx = Lexer { chars: src.chars().peekable(), pos: Pos { line: 1, col: 1 } };
    let mut out = Vec::new();
    while let Some(e) = lx.expr()? {
        out.push(e);
    }
    Ok(out)
}

/// Read exactly one expression.
pub fn read_one(src: &str) -> Result<Sexp, ParseError> {
    let mut all = read_all(src)?;
    match all.len() {
        1 => Ok(all.pop().expect("one item")),
        0 => Err(ParseError::expecting(Pos { line: 1, col: 1 }, "empty input", &["expression"])),
        _ => Err(ParseError::expecting(all[1].pos(), "trailing input", &["end of input"])),
    }
}
