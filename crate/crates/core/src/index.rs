//! Index strings such as `{3,1}^2,2` or `-2,{-2}^2`.
//!
//! ```text
//! index := term { "," term }
//! term  := atom | "{" index "}" [ "^" nat ]
//! atom  := nat | "-" nat
//! ```
//! A negative entry `-s` stands for an alternating (overlined) `s`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A composition of nonzero signed integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Index {
    entries: Vec<i64>,
}

impl Index {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if let Some(pos) = entries.iter().position(|&e| e == 0) {
            return Err(Error::InvalidArgument(format!("entry {pos} is zero")));
        }
        Ok(Index { entries })
    }

    pub fn empty() -> Self {
        Index::default()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.entries.iter().map(|e| e.unsigned_abs()).sum()
    }

    /// Whether the nested sums converge: the first entry is not a plain 1.
    pub fn is_convergent(&self) -> bool {
        self.entries.first() != Some(&1)
    }
}

impl FromStr for Index {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_index(s)
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_index(self))
    }
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected '{}'", c as char))
        }
    }

    fn nat(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error("expected a number");
        }
        let digits = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii digits");
        digits.parse().or_else(|_| {
            self.pos = start;
            self.error("number too large")
        })
    }

    fn index(&mut self, out: &mut Vec<i64>) -> Result<()> {
        self.term(out)?;
        while self.peek() == Some(b',') {
            self.pos += 1;
            self.term(out)?;
        }
        Ok(())
    }

    fn term(&mut self, out: &mut Vec<i64>) -> Result<()> {
        match self.peek() {
            Some(b'{') => {
                self.pos += 1;
                let mut block = Vec::new();
                self.index(&mut block)?;
                self.expect(b'}')?;
                // a bare group counts once
                let mut reps = 1;
                let mut at = self.pos;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    at = self.pos;
                    reps = usize::try_from(self.nat()?).unwrap_or(usize::MAX);
                }
                if block.len().saturating_mul(reps) > 1 << 24 {
                    self.pos = at;
                    return self.error("repetition too large");
                }
                for _ in 0..reps {
                    out.extend_from_slice(&block);
                }
                Ok(())
            }
            Some(b'-') => {
                self.pos += 1;
                let at = self.pos;
                let n = self.atom_value()?;
                if n == 0 {
                    self.pos = at;
                    return self.error("entries must be nonzero");
                }
                out.push(-n);
                Ok(())
            }
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                let n = self.atom_value()?;
                if n == 0 {
                    self.pos = at;
                    return self.error("entries must be nonzero");
                }
                out.push(n);
                Ok(())
            }
            Some(c) => self.error(format!("unexpected '{}'", c as char)),
            None => self.error("unexpected end of input"),
        }
    }

    fn atom_value(&mut self) -> Result<i64> {
        let start = self.pos;
        let n = self.nat()?;
        i64::try_from(n).or_else(|_| {
            self.pos = start;
            self.error("number too large")
        })
    }
}

/// Parses an index string; blank input is the empty index.
pub fn parse_index(text: &str) -> Result<Index> {
    let mut p = Parser {
        text: text.as_bytes(),
        pos: 0,
    };
    let mut entries = Vec::new();
    if p.peek().is_none() {
        return Ok(Index::empty());
    }
    p.index(&mut entries)?;
    if p.peek().is_some() {
        return p.error("trailing input");
    }
    Ok(Index { entries })
}

/// Canonical text, with runs of a repeated entry written as `{e}^n`.
pub fn render_index(ix: &Index) -> String {
    let mut parts = Vec::new();
    let e = ix.entries();
    let mut i = 0;
    while i < e.len() {
        let run = e[i..].iter().take_while(|&&x| x == e[i]).count();
        if run >= 2 {
            parts.push(format!("{{{}}}^{}", e[i], run));
        } else {
            parts.push(e[i].to_string());
        }
        i += run;
    }
    parts.join(",")
}

/// Index families with closed-form evaluations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// {2}^d, including the empty index
    Twos { d: usize },
    /// {3,1}^d with d >= 1
    ThreeOne { d: usize },
    /// {3,1}^d, 2
    ThreeOneTwo { d: usize },
    /// {{2}^m,3,{2}^m,1}^d with m, d >= 1
    Block { m: usize, d: usize },
    /// {{2}^m,3,{2}^m,1}^d, {2}^{m+1} with m, d >= 1
    BlockTail { m: usize, d: usize },
    Generic,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Twos { .. } => "2",
            Family::ThreeOne { .. } => "31",
            Family::ThreeOneTwo { .. } => "312",
            Family::Block { .. } => "2321",
            Family::BlockTail { .. } => "2321tail",
            Family::Generic => "generic",
        }
    }
}

fn block(m: usize) -> Vec<i64> {
    let mut b = vec![2; m];
    b.push(3);
    b.extend(std::iter::repeat_n(2, m));
    b.push(1);
    b
}

/// Whether `e` is `{block(m)}^d` followed by `{2}^tail`, for some d >= 1.
fn repeats_block(e: &[i64], m: usize, tail: usize) -> Option<usize> {
    let b = block(m);
    let body = e.len().checked_sub(tail)?;
    if body == 0 || body % b.len() != 0 {
        return None;
    }
    let ok = e[..body].chunks(b.len()).all(|c| c == b.as_slice())
        && e[body..].iter().all(|&x| x == 2);
    ok.then_some(body / b.len())
}

/// Detects the most specific family of `ix`.
pub fn classify(ix: &Index) -> Family {
    let e = ix.entries();
    if e.iter().all(|&x| x == 2) {
        return Family::Twos { d: e.len() };
    }
    if let Some(d) = repeats_block(e, 0, 0) {
        return Family::ThreeOne { d };
    }
    if let Some(d) = repeats_block(e, 0, 1) {
        return Family::ThreeOneTwo { d };
    }
    let m = e.iter().take_while(|&&x| x == 2).count();
    if m == 0 {
        return Family::Generic;
    }
    if let Some(d) = repeats_block(e, m, 0) {
        return Family::Block { m, d };
    }
    if let Some(d) = repeats_block(e, m, m + 1) {
        return Family::BlockTail { m, d };
    }
    Family::Generic
}
