//! Recursive-descent parser.
//!
//! ```text
//! impl  := or ("->" impl)?
//! or    := and ("|" and)*
//! and   := unary ("&" unary)*
//! unary := ("~" | "[]" | "<>" | "[P]" | "<P>") unary | atom
//! atom  := "p" digits | "#t" | "#f" | "(" impl ")"
//! ```

use super::Formula;
use std::fmt;

/// Failure with the byte offset of the offending token and what would have been accepted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at byte {}: expected one of {}, found {}", self.offset, self.expected.join(" "), self.found)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Not,
    Box,
    Dia,
    PBox,
    PDia,
    Var(u32),
    Top,
    Bot,
    LParen,
    RParen,
    Arrow,
    Or,
    And,
    Eof,
    Bad(String),
}

const UNARY_START: &[&str] = &["~", "[]", "<>", "[P]", "<P>", "p<digits>", "#t", "#f", "("];

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// Returns the next token, its start offset and its end offset without consuming it.
    fn peek(&mut self) -> (Tok, usize, usize) {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let fixed: &[(&str, Tok)] = &[
            ("->", Tok::Arrow),
            ("[]", Tok::Box),
            ("<>", Tok::Dia),
            ("[P]", Tok::PBox),
            ("<P>", Tok::PDia),
            ("#t", Tok::Top),
            ("#f", Tok::Bot),
            ("~", Tok::Not),
            ("(", Tok::LParen),
            (")", Tok::RParen),
            ("|", Tok::Or),
            ("&", Tok::And),
        ];
        if rest.is_empty() {
            return (Tok::Eof, start, start);
        }
        for (s, t) in fixed {
            if rest.starts_with(s) {
                return (t.clone(), start, start + s.len());
            }
        }
        if let Some(digits) = rest.strip_prefix('p') {
            let n = digits.bytes().take_while(u8::is_ascii_digit).count();
            if n > 0 {
                if let Ok(i) = digits[..n].parse::<u32>() {
                    return (Tok::Var(i), start, start + 1 + n);
                }
            }
        }
        let c = rest.chars().next().unwrap();
        (Tok::Bad(c.to_string()), start, start + c.len_utf8())
    }

    fn fail<T>(&mut self, expected: &[&'static str]) -> Result<T, ParseError> {
        let (t, off, _) = self.peek();
        let found = match t {
            Tok::Eof => "end of input".to_string(),
            Tok::Bad(s) => format!("'{s}'"),
            _ => format!("'{}'", self.src[off..].split_whitespace().next().unwrap_or("")),
        };
        Err(ParseError { offset: off, expected: expected.to_vec(), found })
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        let (t, _, end) = self.peek();
        if t == Tok::Arrow {
            self.pos = end;
            let rhs = self.implication()?;
            Ok(Formula::implies(&lhs, &rhs))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        loop {
            let (t, _, end) = self.peek();
            if t != Tok::Or {
                return Ok(acc);
            }
            self.pos = end;
            let rhs = self.conjunction()?;
            acc = Formula::or(&acc, &rhs);
        }
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        loop {
            let (t, _, end) = self.peek();
            if t != Tok::And {
                return Ok(acc);
            }
            self.pos = end;
            let rhs = self.unary()?;
            acc = Formula::and(&acc, &rhs);
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let (t, _, end) = self.peek();
        let op: Option<fn(&Formula) -> Formula> = match t {
            Tok::Not => Some(Formula::not),
            Tok::Box => Some(Formula::boxed),
            Tok::Dia => Some(Formula::dia),
            Tok::PBox => Some(Formula::past_box),
            Tok::PDia => Some(Formula::past_dia),
            _ => None,
        };
        if let Some(op) = op {
            self.pos = end;
            let inner = self.unary()?;
            return Ok(op(&inner));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let (t, _, end) = self.peek();
        match t {
            Tok::Var(i) => {
                self.pos = end;
                Ok(Formula::var(i))
            }
            Tok::Top => {
                self.pos = end;
                Ok(Formula::top())
            }
            Tok::Bot => {
                self.pos = end;
                Ok(Formula::bottom())
            }
            Tok::LParen => {
                self.pos = end;
                let f = self.implication()?;
                let (t, _, end) = self.peek();
                if t != Tok::RParen {
                    return self.fail(&["&", "|", "->", ")"]);
                }
                self.pos = end;
                Ok(f)
            }
            _ => self.fail(UNARY_START),
        }
    }
}

/// Parses the textual syntax; sugar is expanded while parsing.
pub fn parse(src: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let f = p.implication()?;
    let (t, _, _) = p.peek();
    if t != Tok::Eof {
        return p.fail(&["&", "|", "->", "end of input"]);
    }
    Ok(f)
}
