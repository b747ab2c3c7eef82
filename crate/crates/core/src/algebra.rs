//! Sparse exact-rational linear combinations of compositions (elements of
//! H), of ordered pairs (H ⊗ H) and of longer tuples.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rustc_hash::FxHashMap;

use crate::composition::MatrixComposition;
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// `n / d` as an exact rational.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A basis key that can be printed inside a linear combination.
pub trait BasisKey: Clone + Eq + Hash + Ord {
    fn fmt_key(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

impl BasisKey for MatrixComposition {
    fn fmt_key(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl BasisKey for (MatrixComposition, MatrixComposition) {
    fn fmt_key(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (x) {}", self.0, self.1)
    }
}

impl BasisKey for Vec<MatrixComposition> {
    fn fmt_key(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(" (x) ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Finite linear combination with nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct LinComb<K: BasisKey> {
    terms: FxHashMap<K, Rational>,
}

/// An element of H.
pub type HElement = LinComb<MatrixComposition>;
/// An element of H ⊗ H.
pub type HTensor = LinComb<(MatrixComposition, MatrixComposition)>;
/// An element of an n-fold tensor power of H.
pub type MultiTensor = LinComb<Vec<MatrixComposition>>;

impl<K: BasisKey> Default for LinComb<K> {
    fn default() -> Self {
        Self {
            terms: FxHashMap::default(),
        }
    }
}

impl<K: BasisKey> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(Rational::one(), key)
    }

    pub fn term(coeff: Rational, key: K) -> Self {
        let mut x = Self::zero();
        x.add_term(key, coeff);
        x
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, K)>) -> Self {
        let mut x = Self::zero();
        for (c, k) in terms {
            x.add_term(k, c);
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in unspecified order.
    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    /// Terms in canonical (descending key) order.
    pub fn sorted_terms(&self) -> Vec<(&K, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| b.0.cmp(a.0));
        v
    }

    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            std::collections::hash_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), c * v);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    /// Keeps the terms whose key satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Linear extension of a basis-level map.
    pub fn map_linear<L: BasisKey>(
        &self,
        mut f: impl FnMut(&K) -> Result<LinComb<L>>,
    ) -> Result<LinComb<L>> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_scaled(c, &f(k)?);
        }
        Ok(out)
    }
}

impl HElement {
    /// The empty composition ẽ, the unit of every product.
    pub fn unit() -> Self {
        Self::basis(MatrixComposition::empty())
    }

    /// The grlex-greatest composition with nonzero coefficient.
    pub fn leading_monomial(&self) -> Result<&MatrixComposition> {
        self.terms.keys().max().ok_or(Error::ZeroElement)
    }

    pub fn leading_term(&self) -> Result<(&MatrixComposition, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| a.0.cmp(b.0))
            .ok_or(Error::ZeroElement)
    }

    /// Largest block count over all terms (0 for the zero element).
    pub fn max_block_count(&self) -> usize {
        self.terms
            .keys()
            .map(MatrixComposition::block_count)
            .max()
            .unwrap_or(0)
    }

    pub fn alphabet_size(&self) -> Option<usize> {
        self.terms.keys().find_map(MatrixComposition::alphabet_size)
    }
}

impl<K: BasisKey> fmt::Display for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            k.fmt_key(f)?;
        }
        Ok(())
    }
}

impl<K: BasisKey> fmt::Debug for LinComb<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<K: BasisKey> AddAssign<&LinComb<K>> for LinComb<K> {
    fn add_assign(&mut self, rhs: &LinComb<K>) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl<K: BasisKey> SubAssign<&LinComb<K>> for LinComb<K> {
    fn sub_assign(&mut self, rhs: &LinComb<K>) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), -v.clone());
        }
    }
}

impl<K: BasisKey> Add for LinComb<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<K: BasisKey> Add<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: BasisKey> Sub for LinComb<K> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<K: BasisKey> Sub<&LinComb<K>> for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, rhs: &LinComb<K>) -> LinComb<K> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: BasisKey> Neg for LinComb<K> {
    type Output = Self;
    fn neg(mut self) -> Self {
        for v in self.terms.values_mut() {
            *v = -v.clone();
        }
        self
    }
}

impl<K: BasisKey> Neg for &LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        -self.clone()
    }
}

impl<K: BasisKey> FromIterator<(Rational, K)> for LinComb<K> {
    fn from_iter<T: IntoIterator<Item = (Rational, K)>>(iter: T) -> Self {
        Self::from_terms(iter)
    }
}

impl From<MatrixComposition> for HElement {
    fn from(a: MatrixComposition) -> Self {
        Self::basis(a)
    }
}
