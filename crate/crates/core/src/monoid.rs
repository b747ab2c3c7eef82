//! The free commutative monoid on `d` letters, the entry alphabet of
//! matrix compositions.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Number of letters `w1 < ... < wd`, fixed for a session.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Alphabet {
    size: usize,
}

impl Alphabet {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(Self { size })
    }

    pub fn size(self) -> usize {
        self.size
    }

    pub fn epsilon(self) -> Monomial {
        Monomial {
            exps: SmallVec::from_elem(0, self.size),
        }
    }

    /// The letter `w_i`, 1-based.
    pub fn letter(self, i: usize) -> Result<Monomial> {
        if i == 0 || i > self.size {
            return Err(Error::LetterOutOfRange {
                letter: i,
                size: self.size,
            });
        }
        let mut m = self.epsilon();
        m.exps[i - 1] = 1;
        Ok(m)
    }

    pub fn monomial(self, exponents: &[u16]) -> Result<Monomial> {
        if exponents.len() != self.size {
            return Err(Error::AlphabetMismatch {
                left: exponents.len(),
                right: self.size,
            });
        }
        Ok(Monomial {
            exps: SmallVec::from_slice(exponents),
        })
    }

    /// Builds `w_{l1} ⋆ w_{l2} ⋆ ...` from 1-based letters (repeats allowed).
    pub fn from_letters(self, letters: &[usize]) -> Result<Monomial> {
        let mut m = self.epsilon();
        for &l in letters {
            if l == 0 || l > self.size {
                return Err(Error::LetterOutOfRange {
                    letter: l,
                    size: self.size,
                });
            }
            m.exps[l - 1] = m.exps[l - 1].checked_add(1).ok_or(Error::ExponentOverflow)?;
        }
        Ok(m)
    }

    /// All monomials of exactly the given degree, ascending in deg-lex order.
    pub fn monomials_of_degree(self, degree: usize) -> Vec<Monomial> {
        fn rec(pos: usize, left: u16, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(cur.clone());
                return;
            }
            for e in (0..=left).rev() {
                cur[pos] = e;
                rec(pos + 1, left - e, cur, out);
            }
        }
        let mut out = Vec::new();
        rec(0, degree as u16, &mut vec![0; self.size], &mut out);
        out.into_iter()
            .map(|e| Monomial {
                exps: SmallVec::from_vec(e),
            })
            .collect()
    }
}

/// An element of the free commutative monoid, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 8]>,
}

impl Monomial {
    pub fn alphabet_size(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn is_epsilon(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    /// Monoid product (entrywise exponent sum).
    pub fn star(&self, other: &Monomial) -> Result<Monomial> {
        if self.exps.len() != other.exps.len() {
            return Err(Error::AlphabetMismatch {
                left: self.exps.len(),
                right: other.exps.len(),
            });
        }
        let mut exps = self.exps.clone();
        for (e, &o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = e.checked_add(o).ok_or(Error::ExponentOverflow)?;
        }
        Ok(Monomial { exps })
    }

    /// In-place product for callers that have already matched alphabets.
    pub(crate) fn star_assign(&mut self, other: &Monomial) {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        for (e, &o) in self.exps.iter_mut().zip(other.exps.iter()) {
            *e = e.checked_add(o).expect("monomial exponent overflow");
        }
    }

    /// Letters in ascending order with repetition, e.g. `w1⋆w2⋆w2` gives `[1, 2, 2]`.
    pub fn letters(&self) -> Vec<usize> {
        self.exps
            .iter()
            .enumerate()
            .flat_map(|(i, &e)| std::iter::repeat_n(i + 1, e as usize))
            .collect()
    }

    pub fn cmp_deglex(&self, other: &Monomial) -> Result<Ordering> {
        if self.exps.len() != other.exps.len() {
            return Err(Error::AlphabetMismatch {
                left: self.exps.len(),
                right: other.exps.len(),
            });
        }
        Ok(self.cmp(other))
    }
}

/// Degree first; ties compare the sorted letter words lexicographically.
///
/// For equal degrees the first differing exponent decides: the monomial
/// with more copies of the smaller letter reads as the smaller word.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exps
            .len()
            .cmp(&other.exps.len())
            .then_with(|| self.degree().cmp(&other.degree()))
            .then_with(|| {
                self.exps
                    .iter()
                    .zip(other.exps.iter())
                    .find(|(a, b)| a != b)
                    .map_or(Ordering::Equal, |(a, b)| b.cmp(a))
            })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_epsilon() {
            return f.write_str("e");
        }
        let mut first = true;
        for l in self.letters() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
