//! Expression syntax for the command line.
//!
//! ```text
//! expr    := tensor (('+' | '-') tensor)*
//! tensor  := product ('(x)' product)*
//! product := factor (('sh2' | 'qsh' | 'bsh') factor)*
//! factor  := '-' factor | rational '*' factor | '0' | '(' expr ')'
//!          | composition | name '(' expr ')' | 'ev' '(' series ',' series ',' expr ')'
//! series  := 'exp1' | 'log1p' | 't' | '[' ['-'] rational (',' ['-'] rational)* ']'
//! ```
//!
//! Every binary operator is left-associative. The grammar is LL(1) apart
//! from the three-character `(x)` token, which is recognized before `(`.

use std::fmt;

use matcomp::hoffman::SeriesCoeffs;
use matcomp::text::Parser;
use matcomp::{Alphabet, Error, MatrixComposition, Product, Rational, Result};

/// 1-based line and column of a node in its source text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// Syntax tree node. Equality ignores positions.
#[derive(Debug, Clone)]
pub struct Expr {
    pub kind: ExprKind,
    pub pos: Pos,
}

impl PartialEq for Expr {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ExprKind {
    Zero,
    Literal(MatrixComposition),
    Neg(Box<Expr>),
    Scale(Rational, Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Product, Box<Expr>, Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
    Ev(Series, Series, Box<Expr>),
}

/// Named unary maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Phi,
    PhiInv,
    Delta,
    Eulerian(Product),
    Antipode(Product),
    Log(Product),
    Exp(Product),
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        match name {
            "phi" => return Some(Func::Phi),
            "phiinv" => return Some(Func::PhiInv),
            "delta" => return Some(Func::Delta),
            _ => {}
        }
        let (head, product) = name.split_once('_')?;
        let product: Product = product.parse().ok()?;
        match head {
            "eul" => Some(Func::Eulerian(product)),
            "antipode" => Some(Func::Antipode(product)),
            "log" => Some(Func::Log(product)),
            "exp" => Some(Func::Exp(product)),
            _ => None,
        }
    }
}

impl fmt::Display for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Func::Phi => f.write_str("phi"),
            Func::PhiInv => f.write_str("phiinv"),
            Func::Delta => f.write_str("delta"),
            Func::Eulerian(m) => write!(f, "eul_{m}"),
            Func::Antipode(m) => write!(f, "antipode_{m}"),
            Func::Log(m) => write!(f, "log_{m}"),
            Func::Exp(m) => write!(f, "exp_{m}"),
        }
    }
}

/// Power series argument of `ev`: the two standard ones, `t`, or an
/// explicit polynomial `c₁t + c₂t² + …`.
#[derive(Debug, Clone, PartialEq)]
pub enum Series {
    Exp1,
    Log1p,
    T,
    Poly(Vec<Rational>),
}

impl Series {
    /// Coefficients good through `order`.
    pub fn coeffs(&self, order: usize) -> SeriesCoeffs {
        match self {
            Series::Exp1 => SeriesCoeffs::exp1(order),
            Series::Log1p => SeriesCoeffs::log1p(order),
            Series::T => SeriesCoeffs::t(),
            Series::Poly(c) => SeriesCoeffs::polynomial(c.clone()),
        }
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Series::Exp1 => f.write_str("exp1"),
            Series::Log1p => f.write_str("log1p"),
            Series::T => f.write_str("t"),
            Series::Poly(c) => {
                f.write_str("[")?;
                for (i, k) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{k}")?;
                }
                f.write_str("]")
            }
        }
    }
}

impl ExprKind {
    /// Binding strength; a child is parenthesized when it binds more
    /// loosely than its slot requires.
    fn precedence(&self) -> u8 {
        match self {
            ExprKind::Add(..) | ExprKind::Sub(..) => 0,
            ExprKind::Tensor(..) => 1,
            ExprKind::Mul(..) => 2,
            ExprKind::Neg(..) | ExprKind::Scale(..) => 3,
            _ => 4,
        }
    }
}

struct Slot<'a>(&'a Expr, u8);

impl fmt::Display for Slot<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.kind.precedence() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ExprKind::Zero => f.write_str("0"),
            ExprKind::Literal(a) => write!(f, "{a}"),
            ExprKind::Neg(x) => write!(f, "-{}", Slot(x, 3)),
            ExprKind::Scale(k, x) => write!(f, "{k}*{}", Slot(x, 3)),
            ExprKind::Add(l, r) => write!(f, "{} + {}", Slot(l, 0), Slot(r, 1)),
            ExprKind::Sub(l, r) => write!(f, "{} - {}", Slot(l, 0), Slot(r, 1)),
            ExprKind::Tensor(l, r) => write!(f, "{} (x) {}", Slot(l, 1), Slot(r, 2)),
            ExprKind::Mul(m, l, r) => write!(f, "{} {m} {}", Slot(l, 2), Slot(r, 3)),
            ExprKind::Call(func, x) => write!(f, "{func}({x})"),
            ExprKind::Ev(g, h, x) => write!(f, "ev({g}, {h}, {x})"),
        }
    }
}

/// Parses a whole expression over `alphabet`.
pub fn parse(src: &str, alphabet: Alphabet) -> Result<Expr> {
    let mut p = ExprParser {
        src,
        cur: Parser::new(src, alphabet),
    };
    let e = p.expr()?;
    p.cur.skip_ws();
    match p.cur.peek() {
        None => Ok(e),
        Some(c) => Err(p.error(format!("unexpected '{c}'"))),
    }
}

struct ExprParser<'a> {
    src: &'a str,
    cur: Parser<'a>,
}

impl ExprParser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.cur.position()..]
    }

    fn pos(&self) -> Pos {
        let before = &self.src[..self.cur.position()];
        Pos {
            line: before.matches('\n').count() + 1,
            column: before.rsplit('\n').next().unwrap().chars().count() + 1,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.cur.error_at(self.cur.position(), message)
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.cur.skip_ws();
        if self.cur.eat(c) {
            return Ok(());
        }
        Err(self.error(match self.cur.peek() {
            Some(found) => format!("expected '{c}', found '{found}'"),
            None => format!("expected '{c}', found end of input"),
        }))
    }

    /// Consumes `token` if the input continues with it.
    fn token(&mut self, token: &str) -> bool {
        if !self.rest().starts_with(token) {
            return false;
        }
        token.chars().for_each(|c| {
            self.cur.eat(c);
        });
        true
    }

    /// Consumes the keyword `kw` unless it is the prefix of a longer name.
    fn keyword(&mut self, kw: &str) -> bool {
        let rest = self.rest();
        let whole = rest.starts_with(kw) && !rest[kw.len()..].starts_with(|c: char| c.is_alphanumeric() || c == '_');
        whole && self.token(kw)
    }

    fn ident(&mut self) -> String {
        let rest = self.rest();
        let end = rest.find(|c: char| !(c.is_alphanumeric() || c == '_')).unwrap_or(rest.len());
        let name = rest[..end].to_string();
        self.token(&name);
        name
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.tensor()?;
        loop {
            self.cur.skip_ws();
            let pos = self.pos();
            let sub = if self.cur.eat('+') {
                false
            } else if self.cur.eat('-') {
                true
            } else {
                return Ok(lhs);
            };
            let (l, r) = (Box::new(lhs), Box::new(self.tensor()?));
            let kind = if sub { ExprKind::Sub(l, r) } else { ExprKind::Add(l, r) };
            lhs = Expr { kind, pos };
        }
    }

    fn tensor(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            self.cur.skip_ws();
            let pos = self.pos();
            if !self.token("(x)") {
                return Ok(lhs);
            }
            let kind = ExprKind::Tensor(Box::new(lhs), Box::new(self.product()?));
            lhs = Expr { kind, pos };
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            self.cur.skip_ws();
            let pos = self.pos();
            let Some(m) = Product::ALL.into_iter().find(|m| self.keyword(m.token())) else {
                return Ok(lhs);
            };
            let kind = ExprKind::Mul(m, Box::new(lhs), Box::new(self.factor()?));
            lhs = Expr { kind, pos };
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        self.cur.skip_ws();
        let pos = self.pos();
        let start = self.cur.position();
        let kind = match self.cur.peek() {
            Some('-') => {
                self.cur.eat('-');
                ExprKind::Neg(Box::new(self.factor()?))
            }
            Some('(') => {
                self.cur.eat('(');
                let e = self.expr()?;
                self.expect(')')?;
                return Ok(e);
            }
            Some('[') => {
                // Validation errors of the literal carry no position of their own.
                let a = self.cur.composition().map_err(|e| match e {
                    Error::Parse { .. } => e,
                    other => self.cur.error_at(start, other.to_string()),
                })?;
                ExprKind::Literal(a)
            }
            Some(c) if c.is_ascii_digit() => {
                let k = self.cur.rational()?;
                self.cur.skip_ws();
                if self.cur.eat('*') {
                    ExprKind::Scale(k, Box::new(self.factor()?))
                } else if k == Rational::from_integer(0.into()) {
                    ExprKind::Zero
                } else {
                    return Err(self.cur.error_at(start, "a coefficient must be followed by '*'"));
                }
            }
            Some(c) if c.is_alphabetic() => {
                let name = self.ident();
                if name == "ev" {
                    self.expect('(')?;
                    let f = self.series()?;
                    self.expect(',')?;
                    let g = self.series()?;
                    self.expect(',')?;
                    let x = self.expr()?;
                    self.expect(')')?;
                    ExprKind::Ev(f, g, Box::new(x))
                } else {
                    let func = Func::from_name(&name)
                        .ok_or_else(|| self.cur.error_at(start, format!("unknown function '{name}'")))?;
                    self.expect('(')?;
                    let x = self.expr()?;
                    self.expect(')')?;
                    ExprKind::Call(func, Box::new(x))
                }
            }
            Some(c) => return Err(self.error(format!("unexpected '{c}', expected a term"))),
            None => return Err(self.error("unexpected end of input, expected a term")),
        };
        Ok(Expr { kind, pos })
    }

    fn series(&mut self) -> Result<Series> {
        self.cur.skip_ws();
        let start = self.cur.position();
        if !self.cur.eat('[') {
            return match self.ident().as_str() {
                "exp1" => Ok(Series::Exp1),
                "log1p" => Ok(Series::Log1p),
                "t" => Ok(Series::T),
                _ => Err(self.cur.error_at(start, "expected a series: exp1, log1p, t or [c1, c2, ...]")),
            };
        }
        let mut coeffs = Vec::new();
        loop {
            self.cur.skip_ws();
            let negative = self.cur.eat('-');
            self.cur.skip_ws();
            let k = self.cur.rational()?;
            coeffs.push(if negative { -k } else { k });
            self.cur.skip_ws();
            if self.cur.eat(']') {
                return Ok(Series::Poly(coeffs));
            }
            self.expect(',')?;
        }
    }
}
