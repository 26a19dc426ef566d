//! Input files describing a character.
//!
//! ```text
//! # order-2 character with an imperfect residue term
//! p = 2
//! s = 1
//! mode = local
//! components = ["x/t^2"]
//! ```

use rsw_core::base::{check_prime, RatFunc};
use rsw_core::expr::{parse_ratfunc, Vocabulary};
use rsw_core::witt::max_length;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct SpecError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl SpecError {
    fn at(pos: Pos, message: impl Into<String>) -> Self {
        Self {
            line: pos.line,
            col: pos.col,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Local,
    Global,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterSpec {
    pub p: u32,
    pub s: usize,
    pub mode: Mode,
    /// Expressions in written order `(a_{s-1}, ..., a_0)`.
    pub components: Vec<String>,
    pub values: Vec<RatFunc>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Pos {
    line: usize,
    col: usize,
}

struct Scanner<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl<'a> Scanner<'a> {
    fn new(src: &'a str) -> Self {
        Self {
            chars: src.chars().peekable(),
            pos: Pos { line: 1, col: 1 },
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    /// Skips whitespace and `#` comments.
    fn skip_blank(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn word(&mut self) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '#' || c == '=' || c == '[' || c == ']' || c == ',' || c == '"' {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    fn expect(&mut self, want: char) -> Result<(), SpecError> {
        let at = self.pos;
        match self.bump() {
            Some(c) if c == want => Ok(()),
            Some(c) => Err(SpecError::at(at, format!("expected '{want}', found '{c}'"))),
            None => Err(SpecError::at(at, format!("expected '{want}', found end of input"))),
        }
    }

    /// `"..."`; returns the contents and the position of the first character inside.
    fn string(&mut self) -> Result<(String, Pos), SpecError> {
        let open = self.pos;
        self.expect('"')?;
        let start = self.pos;
        let mut out = String::new();
        loop {
            match self.bump() {
                Some('"') => return Ok((out, start)),
                Some('\n') | None => return Err(SpecError::at(open, "unterminated string")),
                Some(c) => out.push(c),
            }
        }
    }

    fn list(&mut self) -> Result<Vec<(String, Pos)>, SpecError> {
        self.expect('[')?;
        let mut items = Vec::new();
        loop {
            self.skip_blank();
            match self.peek() {
                Some(']') => {
                    self.bump();
                    return Ok(items);
                }
                Some('"') => {
                    items.push(self.string()?);
                    self.skip_blank();
                    match self.peek() {
                        Some(',') => {
                            self.bump();
                        }
                        Some(']') => {}
                        Some(c) => return Err(SpecError::at(self.pos, format!("expected ',' or ']', found '{c}'"))),
                        None => return Err(SpecError::at(self.pos, "unterminated list")),
                    }
                }
                Some(c) => return Err(SpecError::at(self.pos, format!("expected a quoted expression, found '{c}'"))),
                None => return Err(SpecError::at(self.pos, "unterminated list")),
            }
        }
    }
}

enum Value {
    Word(String),
    List(Vec<(String, Pos)>),
}

pub fn parse_spec(text: &str) -> Result<CharacterSpec, SpecError> {
    let mut sc = Scanner::new(text);
    let mut p: Option<(u32, Pos)> = None;
    let mut s: Option<(usize, Pos)> = None;
    let mut mode: Option<Mode> = None;
    let mut comps: Option<(Vec<(String, Pos)>, Pos)> = None;
    loop {
        sc.skip_blank();
        if sc.peek().is_none() {
            break;
        }
        let key_pos = sc.pos;
        let key = sc.word();
        if key.is_empty() {
            let c = sc.peek().unwrap_or(' ');
            return Err(SpecError::at(key_pos, format!("expected a key, found '{c}'")));
        }
        sc.skip_blank();
        sc.expect('=')?;
        sc.skip_blank();
        let val_pos = sc.pos;
        let value = if sc.peek() == Some('[') {
            Value::List(sc.list()?)
        } else {
            let w = sc.word();
            if w.is_empty() {
                return Err(SpecError::at(val_pos, format!("missing value for '{key}'")));
            }
            Value::Word(w)
        };
        let duplicate = || SpecError::at(key_pos, format!("duplicate key '{key}'"));
        match (key.as_str(), value) {
            ("p", Value::Word(w)) => {
                if p.is_some() {
                    return Err(duplicate());
                }
                let v: u32 = w
                    .parse()
                    .map_err(|_| SpecError::at(val_pos, format!("p must be an integer, found '{w}'")))?;
                p = Some((v, val_pos));
            }
            ("s", Value::Word(w)) => {
                if s.is_some() {
                    return Err(duplicate());
                }
                let v: usize = w
                    .parse()
                    .map_err(|_| SpecError::at(val_pos, format!("s must be a nonnegative integer, found '{w}'")))?;
                s = Some((v, val_pos));
            }
            ("mode", Value::Word(w)) => {
                if mode.is_some() {
                    return Err(duplicate());
                }
                mode = Some(match w.as_str() {
                    "local" => Mode::Local,
                    "global" => Mode::Global,
                    _ => return Err(SpecError::at(val_pos, format!("mode must be 'local' or 'global', found '{w}'"))),
                });
            }
            ("components", Value::List(items)) => {
                if comps.is_some() {
                    return Err(duplicate());
                }
                comps = Some((items, val_pos));
            }
            ("p" | "s" | "mode", Value::List(_)) => {
                return Err(SpecError::at(val_pos, format!("'{key}' takes a single value")))
            }
            ("components", Value::Word(_)) => {
                return Err(SpecError::at(val_pos, "components must be a bracketed list of quoted expressions"))
            }
            _ => return Err(SpecError::at(key_pos, format!("unknown key '{key}'"))),
        }
    }
    let end = sc.pos;
    let (p, p_pos) = p.ok_or_else(|| SpecError::at(end, "missing key 'p'"))?;
    if check_prime(p).is_err() {
        return Err(SpecError::at(p_pos, "p must be prime in {2,3,5,7}"));
    }
    let (items, list_pos) = comps.ok_or_else(|| SpecError::at(end, "missing key 'components'"))?;
    let (s, s_pos) = s.unwrap_or((items.len(), list_pos));
    if s == 0 {
        return Err(SpecError::at(s_pos, "s must be at least 1"));
    }
    if s > max_length(p) {
        return Err(SpecError::at(s_pos, format!("s = {s} exceeds the supported length {} for p = {p}", max_length(p))));
    }
    if items.len() != s {
        return Err(SpecError::at(
            list_pos,
            format!("component count {} does not match s = {s}", items.len()),
        ));
    }
    let mode = mode.unwrap_or(Mode::Local);
    let vocab = match mode {
        Mode::Local => Vocabulary::LOCAL,
        Mode::Global => Vocabulary::GLOBAL,
    };
    let mut values = Vec::with_capacity(s);
    for (src, pos) in &items {
        let v = parse_ratfunc(src, p, &vocab).map_err(|e| match e {
            rsw_core::Error::Parse(pe) => {
                let pe = pe.offset(pos.line, pos.col);
                SpecError {
                    line: pe.line,
                    col: pe.col,
                    message: pe.message,
                }
            }
            other => SpecError::at(*pos, other.to_string()),
        })?;
        values.push(v);
    }
    Ok(CharacterSpec {
        p,
        s,
        mode,
        components: items.into_iter().map(|(c, _)| c).collect(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_line() {
        let spec = parse_spec(r#"p=2 s=1 mode=local components=["x/t^2"]"#).unwrap();
        assert_eq!(spec.p, 2);
        assert_eq!(spec.s, 1);
        assert_eq!(spec.mode, Mode::Local);
        assert_eq!(spec.components, vec!["x/t^2"]);
    }

    #[test]
    fn multi_line_with_comments() {
        let text = "# comment\np = 3\nmode = global # trailing\ncomponents = [\n  \"x1/x2\",\n  \"1/x1^2\",\n]\n";
        let spec = parse_spec(text).unwrap();
        assert_eq!(spec.s, 2);
        assert_eq!(spec.mode, Mode::Global);
    }

    #[test]
    fn semantic_errors() {
        let e = parse_spec(r#"p=4 components=["t"]"#).unwrap_err();
        assert_eq!(e.message, "p must be prime in {2,3,5,7}");
        assert_eq!((e.line, e.col), (1, 3));
        let e = parse_spec(r#"p=2 s=1 components=["x/t^2","1/t"]"#).unwrap_err();
        assert!(e.message.contains("does not match s = 1"), "{e}");
        assert!(parse_spec(r#"p=5 s=3 components=["t","t","t"]"#).is_err());
        assert!(parse_spec(r#"p=2 components=["x1"]"#).is_err());
        assert!(parse_spec(r#"p=2 q=1 components=["t"]"#).is_err());
        assert!(parse_spec(r#"p=2 p=3 components=["t"]"#).is_err());
    }

    #[test]
    fn expression_errors_point_into_the_file() {
        let text = "p = 2\ncomponents = [\"x/t^2\",\n   \"x + z\"]\n";
        let e = parse_spec(text).unwrap_err();
        assert_eq!(e.line, 3);
        assert_eq!(e.col, 9);
        let e = parse_spec("p = 2\ncomponents = [\"x +\"]").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_spec("p = 2\ncomponents = [\"x\"").unwrap_err();
        assert!(e.message.contains("unterminated"), "{e}");
    }
}
