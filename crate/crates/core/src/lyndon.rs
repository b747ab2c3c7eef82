//! Lyndon words over connected compositions, CFL factorization, the free
//! generators `B_w`, rewriting in generators, and the resulting algebra
//! isomorphisms between the three products.

use std::cmp::Ordering;
use std::fmt;

use rustc_hash::FxHashMap;

use crate::algebra::{BasisKey, HElement, LinComb};
use crate::composition::{MatrixComposition, Word};
use crate::error::{Error, Result};
use crate::products::Product;

/// Chen-Fox-Lyndon factorization by Duval's algorithm: Lyndon factors in
/// non-increasing lexicographic order.
pub fn cfl_factorize(u: &Word) -> Result<Vec<Word>> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    let s = u.letters();
    let n = s.len();
    let mut out = Vec::new();
    let mut k = 0;
    while k < n {
        let (mut i, mut j) = (k, k + 1);
        while j < n {
            match s[i].cmp(&s[j]) {
                Ordering::Less => i = k,
                Ordering::Equal => i += 1,
                Ordering::Greater => break,
            }
            j += 1;
        }
        while k <= i {
            out.push(u.slice(k..k + j - i));
            k += j - i;
        }
    }
    Ok(out)
}

/// Nonempty and strictly smaller than each proper suffix.
pub fn is_lyndon(w: &Word) -> bool {
    !w.is_empty() && cfl_factorize(w).is_ok_and(|f| f.len() == 1)
}

/// `B_w`: diagonal concatenation of the letters of a Lyndon word.
pub fn b_of_lyndon(w: &Word) -> Result<MatrixComposition> {
    if !is_lyndon(w) {
        return Err(Error::NotLyndon);
    }
    Ok(w.to_composition())
}

/// `B^m_u`: the product of `B` over the CFL factors of `u`; ẽ for the empty word.
pub fn b_of_word(product: Product, u: &Word) -> Result<HElement> {
    if u.is_empty() {
        return Ok(HElement::unit());
    }
    let factors: Vec<HElement> = cfl_factorize(u)?
        .iter()
        .map(|f| HElement::basis(f.to_composition()))
        .collect();
    product.mul_all(&factors)
}

/// A commutative monomial in the generators: a multiset of Lyndon words,
/// kept in non-increasing order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneratorMonomial(Vec<Word>);

impl GeneratorMonomial {
    pub fn new(mut factors: Vec<Word>) -> Result<Self> {
        if factors.iter().any(|w| !is_lyndon(w)) {
            return Err(Error::NotLyndon);
        }
        factors.sort_by(|a, b| b.cmp(a));
        Ok(Self(factors))
    }

    /// The monomial `∏ B_f` over the CFL factors of `u`.
    pub fn from_word(u: &Word) -> Result<Self> {
        if u.is_empty() {
            return Ok(Self(Vec::new()));
        }
        Ok(Self(cfl_factorize(u)?))
    }

    pub fn factors(&self) -> &[Word] {
        &self.0
    }

    /// The word whose CFL factorization is this monomial.
    pub fn word(&self) -> Word {
        self.0.iter().fold(Word::empty(), |acc, w| acc.concat(w))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }
}

/// Grlex order of the associated words.
impl Ord for GeneratorMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word().cmp_grlex(&other.word())
    }
}

impl PartialOrd for GeneratorMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for GeneratorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        for group in self.0.chunk_by(|a, b| a == b) {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "B{}", group[0])?;
            if group.len() > 1 {
                write!(f, "^{}", group.len())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GeneratorMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl BasisKey for GeneratorMonomial {
    fn fmt_key(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A rational polynomial in the generators `B_w`.
pub type GeneratorPolynomial = LinComb<GeneratorMonomial>;

/// Writes `x` as a polynomial in the generators of `(H, product)` by
/// repeatedly removing the leading term.
pub fn rewrite_in_generators(product: Product, x: &HElement) -> Result<GeneratorPolynomial> {
    let mut residual = x.clone();
    let mut out = GeneratorPolynomial::zero();
    let mut previous: Option<MatrixComposition> = None;
    while !residual.is_zero() {
        let (a, c) = residual.leading_term()?;
        let (a, c) = (a.clone(), c.clone());
        debug_assert!(previous.as_ref().is_none_or(|p| a < *p), "leading terms must decrease");
        let u = a.block_decompose();
        let b = b_of_word(product, &u)?;
        // The leading coefficient of B^m_u counts repeated CFL factors.
        let c = c / b.coeff(&a);
        out.add_term(GeneratorMonomial::from_word(&u)?, c.clone());
        residual.add_scaled(&-c, &b);
        previous = Some(a);
    }
    Ok(out)
}

/// Substitutes `B_w ↦ B_w` and multiplies with `product`.
pub fn eval_generator_poly(product: Product, p: &GeneratorPolynomial) -> Result<HElement> {
    let mut memo: FxHashMap<GeneratorMonomial, HElement> = FxHashMap::default();
    let mut out = HElement::zero();
    for (m, c) in p.iter() {
        if !memo.contains_key(m) {
            let factors: Vec<HElement> = m
                .factors()
                .iter()
                .map(|w| HElement::basis(w.to_composition()))
                .collect();
            memo.insert(m.clone(), product.mul_all(&factors)?);
        }
        out.add_scaled(c, &memo[m]);
    }
    Ok(out)
}

/// The algebra isomorphism `(H, src) → (H, dst)` fixing every `B_w`.
pub fn lyndon_transport(src: Product, dst: Product, x: &HElement) -> Result<HElement> {
    if src == dst {
        return Ok(x.clone());
    }
    eval_generator_poly(dst, &rewrite_in_generators(src, x)?)
}
