//! The three products on H: two-parameter shuffle, two-parameter
//! quasi-shuffle and block shuffle, computed by direct enumeration of
//! row/column interleavings.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rustc_hash::FxHashMap;

use crate::algebra::{HElement, Rational};
use crate::composition::MatrixComposition;
use crate::error::{Error, Result};
use crate::limits;
use crate::monoid::Alphabet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Product {
    /// Two-parameter shuffle.
    Shuffle2,
    /// Two-parameter quasi-shuffle.
    QuasiShuffle,
    /// Classical shuffle of connected blocks.
    BlockShuffle,
}

impl Product {
    pub const ALL: [Product; 3] = [Product::Shuffle2, Product::QuasiShuffle, Product::BlockShuffle];

    pub fn token(self) -> &'static str {
        match self {
            Product::Shuffle2 => "sh2",
            Product::QuasiShuffle => "qsh",
            Product::BlockShuffle => "bsh",
        }
    }

    pub fn mul(self, a: &MatrixComposition, b: &MatrixComposition) -> Result<HElement> {
        match self {
            Product::Shuffle2 => shuffle2(a, b),
            Product::QuasiShuffle => quasi_shuffle(a, b),
            Product::BlockShuffle => block_shuffle(a, b),
        }
    }

    /// Bilinear extension.
    pub fn mul_elements(self, x: &HElement, y: &HElement) -> Result<HElement> {
        let mut out = HElement::zero();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&(ca * cb), &self.mul(a, b)?);
            }
        }
        Ok(out)
    }

    /// Left-to-right product of several elements; the empty product is ẽ.
    pub fn mul_all<'a>(self, factors: impl IntoIterator<Item = &'a HElement>) -> Result<HElement> {
        let mut acc = HElement::unit();
        for f in factors {
            acc = self.mul_elements(&acc, f)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Product {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "sh2" => Ok(Product::Shuffle2),
            "qsh" => Ok(Product::QuasiShuffle),
            "bsh" => Ok(Product::BlockShuffle),
            other => Err(format!("unknown product '{other}', expected sh2, qsh or bsh")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InterleavingKind {
    Shuffle,
    QuasiShuffle,
}

/// A map `{0..m+s} → {0..j}` strictly increasing on `{0..m}` and on
/// `{m..m+s}` and surjective; bijective for shuffles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interleaving {
    kind: InterleavingKind,
    left: usize,
    right: usize,
    target: usize,
    image: Vec<usize>,
}

impl Interleaving {
    /// Validates a 0-based assignment table.
    pub fn new(left: usize, right: usize, image: Vec<usize>) -> Option<Self> {
        if image.len() != left + right {
            return None;
        }
        let increasing = |s: &[usize]| s.windows(2).all(|w| w[0] < w[1]);
        if !increasing(&image[..left]) || !increasing(&image[left..]) {
            return None;
        }
        let target = image.iter().max().map_or(0, |m| m + 1);
        let mut hit = vec![false; target];
        for &i in &image {
            hit[i] = true;
        }
        if !hit.iter().all(|&h| h) {
            return None;
        }
        let kind = if target == left + right {
            InterleavingKind::Shuffle
        } else {
            InterleavingKind::QuasiShuffle
        };
        Some(Self {
            kind,
            left,
            right,
            target,
            image,
        })
    }

    pub fn kind(&self) -> InterleavingKind {
        self.kind
    }

    pub fn left(&self) -> usize {
        self.left
    }

    pub fn right(&self) -> usize {
        self.right
    }

    /// Size `j` of the codomain.
    pub fn target(&self) -> usize {
        self.target
    }

    /// 0-based images of `0..m+s`.
    pub fn image(&self) -> &[usize] {
        &self.image
    }

    /// For each target position, the left and right source indices landing there.
    pub fn slots(&self) -> Vec<(Option<usize>, Option<usize>)> {
        let mut slots = vec![(None, None); self.target];
        for (i, &t) in self.image.iter().enumerate() {
            if i < self.left {
                slots[t].0 = Some(i);
            } else {
                slots[t].1 = Some(i - self.left);
            }
        }
        slots
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of monotone surjective interleavings of sizes `m` and `s`
/// (the Delannoy number).
pub fn quasi_shuffle_count(m: usize, s: usize) -> u128 {
    (0..=m.min(s))
        .map(|k| (binomial(m, k) * binomial(s, k)) << k)
        .sum()
}

pub fn shuffle_count(m: usize, s: usize) -> u128 {
    binomial(m + s, m)
}

fn slot_sequences(m: usize, s: usize, merges: bool) -> Vec<Vec<(Option<usize>, Option<usize>)>> {
    fn rec(
        i: usize,
        k: usize,
        m: usize,
        s: usize,
        merges: bool,
        cur: &mut Vec<(Option<usize>, Option<usize>)>,
        out: &mut Vec<Vec<(Option<usize>, Option<usize>)>>,
    ) {
        if i == m && k == s {
            out.push(cur.clone());
            return;
        }
        if i < m {
            cur.push((Some(i), None));
            rec(i + 1, k, m, s, merges, cur, out);
            cur.pop();
        }
        if k < s {
            cur.push((None, Some(k)));
            rec(i, k + 1, m, s, merges, cur, out);
            cur.pop();
        }
        if merges && i < m && k < s {
            cur.push((Some(i), Some(k)));
            rec(i + 1, k + 1, m, s, merges, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, 0, m, s, merges, &mut Vec::new(), &mut out);
    out
}

fn to_interleaving(m: usize, s: usize, slots: &[(Option<usize>, Option<usize>)]) -> Interleaving {
    let mut image = vec![0; m + s];
    for (t, &(l, r)) in slots.iter().enumerate() {
        if let Some(l) = l {
            image[l] = t;
        }
        if let Some(r) = r {
            image[m + r] = t;
        }
    }
    Interleaving::new(m, s, image).expect("generated interleaving is valid")
}

/// All `binomial(m+s, m)` shuffles.
pub fn enumerate_shuffles(m: usize, s: usize) -> Vec<Interleaving> {
    slot_sequences(m, s, false)
        .iter()
        .map(|sl| to_interleaving(m, s, sl))
        .collect()
}

/// All monotone surjections for every admissible codomain size.
pub fn enumerate_quasi_shuffles(m: usize, s: usize) -> Vec<Interleaving> {
    slot_sequences(m, s, true)
        .iter()
        .map(|sl| to_interleaving(m, s, sl))
        .collect()
}

fn check_alphabets(a: &MatrixComposition, b: &MatrixComposition) -> Result<Option<Alphabet>> {
    match (a.alphabet_size(), b.alphabet_size()) {
        (Some(x), Some(y)) if x != y => Err(Error::AlphabetMismatch { left: x, right: y }),
        (Some(x), _) | (None, Some(x)) => Ok(Some(Alphabet::new(x)?)),
        (None, None) => Ok(None),
    }
}

fn counts_to_element(counts: FxHashMap<MatrixComposition, u64>) -> HElement {
    counts
        .into_iter()
        .map(|(c, n)| (Rational::from_integer(BigInt::from(n)), c))
        .collect()
}

/// Shared kernel: sum over row slot sequences × column slot sequences of the
/// rearranged (and, for merged slots, ⋆-combined) `diag(a, b)`.
fn interleave_product(a: &MatrixComposition, b: &MatrixComposition, merges: bool) -> Result<HElement> {
    let alphabet = match check_alphabets(a, b)? {
        None => return Ok(HElement::unit()),
        Some(_) if a.is_empty() => return Ok(HElement::basis(b.clone())),
        Some(_) if b.is_empty() => return Ok(HElement::basis(a.clone())),
        Some(ab) => ab,
    };
    let count = |m, s| {
        if merges {
            quasi_shuffle_count(m, s)
        } else {
            shuffle_count(m, s)
        }
    };
    limits::check(count(a.rows(), b.rows()) * count(a.cols(), b.cols()))?;
    let row_slots = slot_sequences(a.rows(), b.rows(), merges);
    let col_slots = slot_sequences(a.cols(), b.cols(), merges);
    let eps = alphabet.epsilon();
    let mut counts: FxHashMap<MatrixComposition, u64> = FxHashMap::default();
    for rs in &row_slots {
        for cs in &col_slots {
            let mut entries = Vec::with_capacity(rs.len() * cs.len());
            for &(ra, rb) in rs {
                for &(ca, cb) in cs {
                    let mut m = eps.clone();
                    if let (Some(r), Some(c)) = (ra, ca) {
                        m.star_assign(a.get(r, c));
                    }
                    if let (Some(r), Some(c)) = (rb, cb) {
                        m.star_assign(b.get(r, c));
                    }
                    entries.push(m);
                }
            }
            let c = MatrixComposition::from_parts_unchecked(rs.len(), cs.len(), entries);
            *counts.entry(c).or_insert(0) += 1;
        }
    }
    Ok(counts_to_element(counts))
}

/// Two-parameter shuffle of basis compositions.
pub fn shuffle2(a: &MatrixComposition, b: &MatrixComposition) -> Result<HElement> {
    interleave_product(a, b, false)
}

/// Two-parameter quasi-shuffle of basis compositions.
pub fn quasi_shuffle(a: &MatrixComposition, b: &MatrixComposition) -> Result<HElement> {
    interleave_product(a, b, true)
}

/// Word shuffle of the block decompositions, reassembled diagonally.
pub fn block_shuffle(a: &MatrixComposition, b: &MatrixComposition) -> Result<HElement> {
    check_alphabets(a, b)?;
    let u = a.block_decompose();
    let v = b.block_decompose();
    limits::check(shuffle_count(u.len(), v.len()))?;
    let mut counts: FxHashMap<MatrixComposition, u64> = FxHashMap::default();
    for slots in slot_sequences(u.len(), v.len(), false) {
        let blocks = slots.iter().map(|&(l, r)| match (l, r) {
            (Some(i), None) => &u.letters()[i],
            (None, Some(k)) => &v.letters()[k],
            _ => unreachable!("shuffles do not merge"),
        });
        *counts.entry(MatrixComposition::diag(blocks)).or_insert(0) += 1;
    }
    Ok(counts_to_element(counts))
}
