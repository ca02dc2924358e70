//! Text form of semi-simple sets.
//!
//! ```text
//! set        := component ( "|" component )*
//! component  := vector [ "+" "{" vector ( "," vector )* "}" "*" ]
//! vector     := "(" integer ( "," integer )* ")"
//! integer    := [ "-" ] digits
//! ```
//!
//! Whitespace is insignificant and `#` starts a comment running to the end
//! of the line.

use std::fmt::{self, Write};

use num_bigint::BigInt;

use super::{SemiSimpleSet, SimpleComponent};
use crate::error::{Error, Result};
use crate::linalg::IntVector;

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    dim: Option<usize>,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            dim: None,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            line: self.line,
            column: self.column,
            message: message.into(),
        })
    }

    fn bump(&mut self) -> Option<char> {
        let c = *self.chars.get(self.pos)?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(&c) = self.chars.get(self.pos) {
            if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_trivia();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, want: char) -> Result<()> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => self.error(format!("expected '{want}', found '{c}'")),
            None => self.error(format!("expected '{want}', found end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let negative = self.peek() == Some('-');
        if negative {
            self.bump();
            self.skip_trivia();
        }
        let mut digits = String::new();
        while let Some(&c) = self.chars.get(self.pos) {
            if !c.is_ascii_digit() {
                break;
            }
            digits.push(c);
            self.bump();
        }
        let next = self.chars.get(self.pos).copied();
        if digits.is_empty() {
            return match next {
                Some(c) if c.is_alphanumeric() || c == '.' => self.error("non-integer coordinate"),
                Some(c) => self.error(format!("expected an integer, found '{c}'")),
                None => self.error("expected an integer, found end of input"),
            };
        }
        if matches!(next, Some(c) if c == '.' || c == '/' || c.is_alphabetic()) {
            return self.error("non-integer coordinate");
        }
        let value: BigInt = digits.parse().expect("ascii digits");
        Ok(if negative { -value } else { value })
    }

    fn vector(&mut self) -> Result<IntVector> {
        let (line, column) = {
            self.skip_trivia();
            (self.line, self.column)
        };
        self.expect('(')?;
        if self.peek() == Some(')') {
            return self.error("empty vector");
        }
        let mut entries = vec![self.integer()?];
        loop {
            match self.peek() {
                Some(',') => {
                    self.bump();
                    entries.push(self.integer()?);
                }
                Some(')') => {
                    self.bump();
                    break;
                }
                Some(c) => return self.error(format!("expected ',' or ')', found '{c}'")),
                None => return self.error("unterminated vector"),
            }
        }
        match self.dim {
            None => self.dim = Some(entries.len()),
            Some(d) if d != entries.len() => {
                return Err(Error::Syntax {
                    line,
                    column,
                    message: format!(
                        "vector has dimension {}, but the first vector has dimension {d}",
                        entries.len()
                    ),
                })
            }
            Some(_) => {}
        }
        Ok(IntVector::new(entries))
    }

    fn component(&mut self) -> Result<SimpleComponent> {
        let offset = self.vector()?;
        let mut generators = Vec::new();
        if self.peek() == Some('+') {
            self.bump();
            self.expect('{')?;
            generators.push(self.vector()?);
            loop {
                match self.peek() {
                    Some(',') => {
                        self.bump();
                        generators.push(self.vector()?);
                    }
                    Some('}') => {
                        self.bump();
                        break;
                    }
                    Some(c) => return self.error(format!("expected ',' or '}}', found '{c}'")),
                    None => return self.error("unterminated generator list"),
                }
            }
            self.expect('*')?;
        }
        SimpleComponent::new(offset, generators)
    }

    fn set(&mut self) -> Result<SemiSimpleSet> {
        if self.peek().is_none() {
            return self.error("empty input: expected at least one component");
        }
        let mut components = vec![self.component()?];
        loop {
            match self.peek() {
                Some('|') => {
                    self.bump();
                    components.push(self.component()?);
                }
                Some(c) => return self.error(format!("expected '|' or end of input, found '{c}'")),
                None => break,
            }
        }
        let dim = self.dim.expect("at least one vector parsed");
        SemiSimpleSet::new(dim, components)
    }
}

/// Parses the text form; the dimension is taken from the first vector.
pub fn parse(text: &str) -> Result<SemiSimpleSet> {
    Parser::new(text).set()
}

/// Canonical text form, e.g. `(0,0) + {(2,1),(1,2)}* | (5,-3)`.
pub fn format(s: &SemiSimpleSet) -> String {
    s.to_string()
}

impl fmt::Display for SimpleComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.offset())?;
        if !self.generators().is_empty() {
            f.write_str(" + {")?;
            for (i, g) in self.generators().iter().enumerate() {
                if i > 0 {
                    f.write_char(',')?;
                }
                write!(f, "{g}")?;
            }
            f.write_str("}*")?;
        }
        Ok(())
    }
}

impl fmt::Display for SemiSimpleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.components().iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}
