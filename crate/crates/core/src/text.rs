//! Text forms of monomials, compositions, words and elements.
//!
//! ```text
//! monomial    := atom ('*' atom)*          atom := letter | 'e'
//! composition := '[' (row (';' row)*)? ']' row  := monomial+
//! element     := ['-'] term (('+'|'-') term)* | '0'
//! term        := [rational '*'] composition
//! ```
//! Whitespace separates entries of a row; around `*` it is ignored, so
//! `1 * 2` is a single entry.

use num_bigint::BigInt;

use crate::algebra::{HElement, Rational};
use crate::composition::{MatrixComposition, Word};
use crate::error::{Error, Result};
use crate::monoid::{Alphabet, Monomial};

pub fn parse_monomial(src: &str, alphabet: Alphabet) -> Result<Monomial> {
    let mut p = Parser::new(src, alphabet);
    p.skip_ws();
    let m = p.monomial()?;
    p.finish()?;
    Ok(m)
}

pub fn parse_composition(src: &str, alphabet: Alphabet) -> Result<MatrixComposition> {
    let mut p = Parser::new(src, alphabet);
    p.skip_ws();
    let c = p.composition()?;
    p.finish()?;
    Ok(c)
}

/// A word written as juxtaposed connected compositions, e.g. `[1][2 3]`.
pub fn parse_word(src: &str, alphabet: Alphabet) -> Result<Word> {
    let mut p = Parser::new(src, alphabet);
    let mut letters = Vec::new();
    p.skip_ws();
    while p.peek().is_some() {
        let at = p.pos;
        let c = p.composition()?;
        if c.is_empty() && letters.is_empty() {
            p.skip_ws();
            if p.peek().is_none() {
                return Ok(Word::empty());
            }
        }
        if !c.is_connected() {
            return Err(p.error_at(at, format!("letter {c} is not a connected composition")));
        }
        letters.push(c);
        p.skip_ws();
    }
    Word::new(letters)
}

pub fn parse_element(src: &str, alphabet: Alphabet) -> Result<HElement> {
    let mut p = Parser::new(src, alphabet);
    p.skip_ws();
    if p.eat('0') {
        p.finish()?;
        return Ok(HElement::zero());
    }
    let mut x = HElement::zero();
    let mut sign = if p.eat('-') { -1 } else { 1 };
    loop {
        p.skip_ws();
        let coeff = if p.peek().is_some_and(|c| c.is_ascii_digit()) {
            let r = p.rational()?;
            p.skip_ws();
            p.expect('*')?;
            p.skip_ws();
            r
        } else {
            Rational::from_integer(BigInt::from(1))
        };
        let c = p.composition()?;
        x.add_term(c, coeff * BigInt::from(sign));
        p.skip_ws();
        if p.eat('+') {
            sign = 1;
        } else if p.eat('-') {
            sign = -1;
        } else {
            break;
        }
    }
    p.finish()?;
    Ok(x)
}

/// Character cursor with line/column reporting.
pub struct Parser<'a> {
    src: &'a str,
    pos: usize,
    alphabet: Alphabet,
}

impl<'a> Parser<'a> {
    pub fn new(src: &'a str, alphabet: Alphabet) -> Self {
        Self {
            src,
            pos: 0,
            alphabet,
        }
    }

    pub fn position(&self) -> usize {
        self.pos
    }

    pub fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    pub fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    pub fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let before = &self.src[..pos];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().unwrap().chars().count() + 1;
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(match self.peek() {
                Some(found) => format!("expected '{c}', found '{found}'"),
                None => format!("expected '{c}', found end of input"),
            }))
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected '{c}'"))),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        Ok(self.src[start..self.pos].parse().unwrap())
    }

    /// `INT ('/' INT)?`
    pub fn rational(&mut self) -> Result<Rational> {
        let num = self.integer()?;
        if self.eat('/') {
            let at = self.pos;
            let den = self.integer()?;
            if den == BigInt::from(0) {
                return Err(self.error_at(at, "zero denominator"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn atom(&mut self) -> Result<Monomial> {
        if self.eat('e') {
            return Ok(self.alphabet.epsilon());
        }
        let at = self.pos;
        let n = self.integer()?;
        let letter: usize = (&n).try_into().unwrap_or(usize::MAX);
        self.alphabet.letter(letter).map_err(|_| {
            self.error_at(
                at,
                format!("letter {n} is outside the alphabet 1..={}", self.alphabet.size()),
            )
        })
    }

    pub fn monomial(&mut self) -> Result<Monomial> {
        let mut m = self.atom()?;
        loop {
            let save = self.pos;
            self.skip_ws();
            if self.eat('*') {
                self.skip_ws();
                m = m.star(&self.atom()?)?;
            } else {
                self.pos = save;
                return Ok(m);
            }
        }
    }

    pub fn composition(&mut self) -> Result<MatrixComposition> {
        self.expect('[')?;
        self.skip_ws();
        if self.eat(']') {
            return Ok(MatrixComposition::empty());
        }
        let mut grid: Vec<Vec<Monomial>> = vec![Vec::new()];
        loop {
            self.skip_ws();
            match self.peek() {
                Some(']') => {
                    self.bump();
                    break;
                }
                Some(';') => {
                    if grid.last().unwrap().is_empty() {
                        return Err(self.error("empty row"));
                    }
                    self.bump();
                    grid.push(Vec::new());
                }
                Some(_) => {
                    let m = self.monomial()?;
                    grid.last_mut().unwrap().push(m);
                }
                None => return Err(self.error("unterminated composition, expected ']'")),
            }
        }
        if grid.last().unwrap().is_empty() {
            return Err(self.error("empty row"));
        }
        MatrixComposition::new(grid)
    }
}
