//! Group words: syntax tree, parser, and printer.
//!
//! Grammar:
//!
//! ```text
//! word   := factor+
//! factor := atom ["^" int]
//! atom   := var | "(" word ")" | "[" word "," word "]"
//! var    := "x" digit+            (x1, x2, ...)
//! int    := ["-"] digit+
//! ```
//!
//! `[a, b]` denotes `a⁻¹ b⁻¹ a b`. Whitespace is ignored.

mod engine;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use engine::*;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Word {
    /// Variable `x_i`, 1-based.
    Var(u32),
    Inverse(Box<Word>),
    Power(Box<Word>, i64),
    Concat(Vec<Word>),
    Commutator(Box<Word>, Box<Word>),
}

impl Word {
    pub fn var(i: u32) -> Word {
        Word::Var(i)
    }

    pub fn commutator(a: Word, b: Word) -> Word {
        Word::Commutator(Box::new(a), Box::new(b))
    }

    pub fn power(a: Word, n: i64) -> Word {
        Word::Power(Box::new(a), n)
    }

    /// `[x, y] z^p`, the word whose width the Holt groups inflate.
    pub fn commutator_times_power(p: i64) -> Word {
        Word::Concat(vec![Word::commutator(Word::Var(1), Word::Var(2)), Word::power(Word::Var(3), p)])
    }

    /// Highest variable index referenced.
    pub fn arity(&self) -> usize {
        self.variables().last().copied().unwrap_or(0) as usize
    }

    /// Distinct variable indices, sorted.
    pub fn variables(&self) -> Vec<u32> {
        let mut s = BTreeSet::new();
        self.collect_vars(&mut s);
        s.into_iter().collect()
    }

    fn collect_vars(&self, s: &mut BTreeSet<u32>) {
        match self {
            Word::Var(i) => {
                s.insert(*i);
            }
            Word::Inverse(a) | Word::Power(a, _) => a.collect_vars(s),
            Word::Concat(items) => items.iter().for_each(|w| w.collect_vars(s)),
            Word::Commutator(a, b) => {
                a.collect_vars(s);
                b.collect_vars(s);
            }
        }
    }

    /// Canonical form: nested exponents multiplied out, `^1` dropped, `^-1`
    /// written as an inverse, double inverses cancelled, and concatenations
    /// flattened.
    pub fn normalize(&self) -> Result<Word> {
        Ok(match self {
            Word::Var(i) => Word::Var(*i),
            Word::Inverse(a) => match a.normalize()? {
                Word::Inverse(b) => *b,
                Word::Power(b, k) => make_power(*b, k.checked_neg().ok_or_else(overflow)?),
                other => Word::Inverse(Box::new(other)),
            },
            Word::Power(a, k) => match a.normalize()? {
                Word::Power(b, j) => make_power(*b, j.checked_mul(*k).ok_or_else(overflow)?),
                Word::Inverse(b) => make_power(*b, k.checked_neg().ok_or_else(overflow)?),
                other => make_power(other, *k),
            },
            Word::Concat(items) => {
                let mut flat = Vec::with_capacity(items.len());
                for w in items {
                    match w.normalize()? {
                        Word::Concat(inner) => flat.extend(inner),
                        other => flat.push(other),
                    }
                }
                if flat.len() == 1 {
                    flat.pop().unwrap()
                } else {
                    Word::Concat(flat)
                }
            }
            Word::Commutator(a, b) => Word::commutator(a.normalize()?, b.normalize()?),
        })
    }
}

fn overflow() -> Error {
    Error::Syntax { pos: 0, msg: "exponent overflow".into() }
}

fn make_power(a: Word, k: i64) -> Word {
    match k {
        1 => a,
        -1 => Word::Inverse(Box::new(a)),
        _ => Word::Power(Box::new(a), k),
    }
}

/// Prints a word so that it is a single factor of the grammar.
fn fmt_atom(w: &Word, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match w {
        Word::Var(_) | Word::Commutator(..) => write!(f, "{w}"),
        _ => write!(f, "({w})"),
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Var(i) => write!(f, "x{i}"),
            Word::Commutator(a, b) => write!(f, "[{a},{b}]"),
            Word::Power(a, k) => {
                fmt_atom(a, f)?;
                write!(f, "^{k}")
            }
            Word::Inverse(a) => {
                fmt_atom(a, f)?;
                write!(f, "^-1")
            }
            Word::Concat(items) => {
                for w in items {
                    match w {
                        Word::Concat(_) => write!(f, "({w})")?,
                        _ => write!(f, "{w}")?,
                    }
                }
                Ok(())
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn digits(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn word(&mut self) -> Result<Word> {
        let mut items = Vec::new();
        while matches!(self.peek(), Some(b'x' | b'(' | b'[')) {
            items.push(self.factor()?);
        }
        match items.len() {
            0 => Err(self.err("expected a word")),
            1 => Ok(items.pop().unwrap()),
            _ => Ok(Word::Concat(items)),
        }
    }

    fn factor(&mut self) -> Result<Word> {
        let atom = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(atom);
        }
        self.pos += 1;
        self.skip_ws();
        let neg = if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let start = self.pos;
        let text = self.digits()?;
        let mag: i64 = text.parse().map_err(|_| Error::Syntax { pos: start, msg: "exponent overflow".into() })?;
        Ok(Word::Power(Box::new(atom), if neg { -mag } else { mag }))
    }

    fn atom(&mut self) -> Result<Word> {
        match self.peek() {
            Some(b'x') => {
                self.pos += 1;
                let start = self.pos;
                let i: u32 = self
                    .digits()?
                    .parse()
                    .map_err(|_| Error::Syntax { pos: start, msg: "variable index overflow".into() })?;
                if i == 0 {
                    return Err(Error::Syntax { pos: start, msg: "variables start at x1".into() });
                }
                Ok(Word::Var(i))
            }
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                self.expect(b')')?;
                Ok(w)
            }
            Some(b'[') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(b',')?;
                let b = self.word()?;
                self.expect(b']')?;
                Ok(Word::commutator(a, b))
            }
            _ => Err(self.err("expected 'x', '(' or '['")),
        }
    }
}

/// Parses and normalizes a word.
pub fn parse_word(text: &str) -> Result<Word> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let w = p.word()?;
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    w.normalize().map_err(|e| match e {
        Error::Syntax { msg, .. } => Error::Syntax { pos: text.len(), msg },
        other => other,
    })
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        parse_word(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let w = parse_word("[x1,x2]x3^5").unwrap();
        assert_eq!(w, Word::commutator_times_power(5));
        assert_eq!(w.arity(), 3);
        let w = parse_word("x1^6").unwrap();
        assert_eq!(w, Word::power(Word::Var(1), 6));
        assert_eq!(w.arity(), 1);
        assert_eq!(parse_word("[x1,x2]").unwrap().arity(), 2);
        assert_eq!(parse_word("x3").unwrap().arity(), 3);
    }

    #[test]
    fn normalizes_nested_exponents() {
        assert_eq!(parse_word("(x1^2)^3").unwrap(), Word::power(Word::Var(1), 6));
        assert_eq!(parse_word("(x1^-1)^-1").unwrap(), Word::Var(1));
        assert_eq!(parse_word("x1^-1").unwrap(), Word::Inverse(Box::new(Word::Var(1))));
        assert_eq!(parse_word("((x1x2)x3)").unwrap(), Word::Concat(vec![Word::Var(1), Word::Var(2), Word::Var(3)]));
        assert_eq!(parse_word("x1^1").unwrap(), Word::Var(1));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse_word(""), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_word("[x1 x2]"), Err(Error::Syntax { pos: 6, .. })));
        assert!(matches!(parse_word("x0"), Err(Error::Syntax { pos: 1, .. })));
        assert!(matches!(parse_word("x1^"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse_word("y1"), Err(Error::Syntax { pos: 0, .. })));
        assert!(matches!(parse_word("x1)"), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn exponent_overflow() {
        let e = parse_word("x1^99999999999999999999").unwrap_err();
        assert!(matches!(e, Error::Syntax { ref msg, .. } if msg.contains("overflow")));
        let e = parse_word("(x1^4611686018427387904)^4").unwrap_err();
        assert!(matches!(e, Error::Syntax { ref msg, .. } if msg.contains("overflow")));
    }

    #[test]
    fn printing() {
        assert_eq!(parse_word("[x1,x2]x3^5").unwrap().to_string(), "[x1,x2]x3^5");
        assert_eq!(parse_word("(x1x2)^-1").unwrap().to_string(), "(x1x2)^-1");
        assert_eq!(parse_word("[x1x2,x3]^2").unwrap().to_string(), "[x1x2,x3]^2");
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        let leaf = (1u32..5).prop_map(Word::Var);
        leaf.prop_recursive(4, 24, 4, |inner| {
            prop_oneof![
                inner.clone().prop_map(|w| Word::Inverse(Box::new(w))),
                (inner.clone(), -7i64..8).prop_map(|(w, k)| Word::power(w, k)),
                proptest::collection::vec(inner.clone(), 2..4).prop_map(Word::Concat),
                (inner.clone(), inner).prop_map(|(a, b)| Word::commutator(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(w in arb_word()) {
            let n = w.normalize().unwrap();
            let printed = n.to_string();
            let back = parse_word(&printed).unwrap();
            prop_assert_eq!(&back, &n);
            prop_assert_eq!(back.arity(), w.arity());
        }
    }
}
