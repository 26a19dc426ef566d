//! Parser for rational-function expressions over F_p.
//!
//! Grammar: integer literals, variables, `+ - * / ^`, parentheses. Exponents are
//! (optionally negative) integer literals. Integer literals are reduced mod p.

use thiserror::Error;

use crate::base::{RatFunc, Var, VarNames};
use crate::error::Error as CoreError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, col: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            col,
            message: message.into(),
        }
    }

    /// Shifts a position computed inside an embedded string.
    pub fn offset(mut self, line: usize, col: usize) -> Self {
        if self.line == 1 {
            self.col += col - 1;
        }
        self.line += line - 1;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Ident(String),
    Op(char),
    End,
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Lexer {
    fn tokens(src: &str) -> Result<Vec<(Tok, usize, usize)>, ParseError> {
        let mut lx = Lexer {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
        };
        let mut out = Vec::new();
        loop {
            while let Some(&c) = lx.chars.get(lx.pos) {
                if c == '\n' {
                    lx.line += 1;
                    lx.col = 1;
                    lx.pos += 1;
                } else if c.is_whitespace() {
                    lx.bump();
                } else {
                    break;
                }
            }
            let (line, col) = (lx.line, lx.col);
            let Some(&c) = lx.chars.get(lx.pos) else {
                out.push((Tok::End, line, col));
                return Ok(out);
            };
            if c.is_ascii_digit() {
                let mut v: u64 = 0;
                while let Some(&d) = lx.chars.get(lx.pos) {
                    if let Some(k) = d.to_digit(10) {
                        v = v
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(k as u64))
                            .ok_or_else(|| ParseError::new(line, col, "integer literal too large"))?;
                        lx.bump();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Int(v), line, col));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let mut s = String::new();
                while let Some(&d) = lx.chars.get(lx.pos) {
                    if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                        s.push(d);
                        lx.bump();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(s), line, col));
            } else if "+-*/^()".contains(c) {
                lx.bump();
                out.push((Tok::Op(c), line, col));
            } else {
                return Err(ParseError::new(line, col, format!("unexpected character '{c}'")));
            }
        }
    }

    fn bump(&mut self) {
        self.pos += 1;
        self.col += 1;
    }
}

/// Variable names accepted by a parse, mapped to polynomial slots.
pub struct Vocabulary<'a> {
    pub names: &'a [(&'a str, Var)],
}

impl Vocabulary<'static> {
    pub const LOCAL: Vocabulary<'static> = Vocabulary {
        names: &[("t", Var::T), ("x", Var::X)],
    };
    pub const GLOBAL: Vocabulary<'static> = Vocabulary {
        names: &[("x1", Var::T), ("x2", Var::X)],
    };
    pub const RADICIAL: Vocabulary<'static> = Vocabulary {
        names: &[("t", Var::T), ("y", Var::X)],
    };
}

struct Parser<'v> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    p: u32,
    vocab: &'v Vocabulary<'v>,
}

impl<'v> Parser<'v> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn here(&self) -> (usize, usize) {
        (self.toks[self.pos].1, self.toks[self.pos].2)
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        let (l, c) = self.here();
        ParseError::new(l, c, msg)
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Tok::Op('-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Op('/') => {
                    self.pos += 1;
                    let here = self.here();
                    let d = self.unary()?;
                    acc = acc
                        .div(&d)
                        .map_err(|_| ParseError::new(here.0, here.1, "division by zero"))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RatFunc, ParseError> {
        if *self.peek() == Tok::Op('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        if *self.peek() == Tok::Op('+') {
            self.pos += 1;
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if *self.peek() == Tok::Op('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let here = self.here();
        match self.peek().clone() {
            Tok::Int(e) => {
                self.pos += 1;
                if e > 10_000 {
                    return Err(ParseError::new(here.0, here.1, "exponent too large"));
                }
                if negative {
                    base.inv()
                        .map(|b| b.pow(e as u32))
                        .map_err(|_| ParseError::new(here.0, here.1, "division by zero"))
                } else {
                    Ok(base.pow(e as u32))
                }
            }
            _ => Err(self.err("expected integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek().clone() {
            Tok::Int(v) => {
                self.pos += 1;
                Ok(RatFunc::constant((v % self.p as u64) as i64, self.p))
            }
            Tok::Ident(name) => {
                let v = self
                    .vocab
                    .names
                    .iter()
                    .find(|(n, _)| *n == name)
                    .map(|(_, v)| *v)
                    .ok_or_else(|| self.err(format!("unknown variable '{name}'")))?;
                self.pos += 1;
                Ok(RatFunc::var(v, self.p))
            }
            Tok::Op('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if *self.peek() != Tok::Op(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Tok::End => Err(self.err("unexpected end of expression")),
            Tok::Op(c) => Err(self.err(format!("unexpected '{c}'"))),
        }
    }
}

/// Parses `src` as a rational function over F_p in the given vocabulary.
pub fn parse_ratfunc(src: &str, p: u32, vocab: &Vocabulary<'_>) -> Result<RatFunc, CoreError> {
    crate::base::check_prime(p)?;
    let toks = Lexer::tokens(src)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        p,
        vocab,
    };
    let f = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(parser.err("trailing input").into());
    }
    Ok(f)
}

/// Canonical printing in the given naming scheme; re-parses to the same value.
pub fn print_ratfunc(f: &RatFunc, names: &VarNames) -> String {
    f.to_expr(names)
}
