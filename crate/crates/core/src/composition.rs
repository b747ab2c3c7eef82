//! Matrix compositions, their block (connected-component) structure, and
//! the orders on connected compositions and on words of them.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::monoid::{Alphabet, Monomial};

/// A matrix over the monoid without ε-rows or ε-columns, or the empty
/// composition of size (0, 0). Stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixComposition {
    rows: usize,
    cols: usize,
    entries: Vec<Monomial>,
}

impl MatrixComposition {
    pub fn empty() -> Self {
        Self {
            rows: 0,
            cols: 0,
            entries: Vec::new(),
        }
    }

    /// Validates a grid given as rows.
    pub fn new(grid: Vec<Vec<Monomial>>) -> Result<Self> {
        if grid.is_empty() || grid.iter().all(Vec::is_empty) && grid.len() == 1 {
            return Ok(Self::empty());
        }
        let cols = grid[0].len();
        for (i, row) in grid.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Ragged {
                    row: i,
                    found: row.len(),
                    expected: cols,
                });
            }
        }
        let rows = grid.len();
        Self::from_row_major(rows, cols, grid.into_iter().flatten().collect())
    }

    pub fn from_row_major(rows: usize, cols: usize, entries: Vec<Monomial>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            if entries.is_empty() {
                return Ok(Self::empty());
            }
            return Err(Error::Ragged {
                row: 0,
                found: entries.len(),
                expected: 0,
            });
        }
        if entries.len() != rows * cols {
            return Err(Error::Ragged {
                row: entries.len() / cols,
                found: entries.len() % cols,
                expected: cols,
            });
        }
        let d = entries[0].alphabet_size();
        if let Some(bad) = entries.iter().find(|m| m.alphabet_size() != d) {
            return Err(Error::AlphabetMismatch {
                left: d,
                right: bad.alphabet_size(),
            });
        }
        let c = Self {
            rows,
            cols,
            entries,
        };
        for r in 0..rows {
            if c.row(r).iter().all(Monomial::is_epsilon) {
                return Err(Error::EpsilonRow(r));
            }
        }
        for j in 0..cols {
            if (0..rows).all(|r| c.get(r, j).is_epsilon()) {
                return Err(Error::EpsilonColumn(j));
            }
        }
        Ok(c)
    }

    /// Caller guarantees the composition invariants.
    pub(crate) fn from_parts_unchecked(rows: usize, cols: usize, entries: Vec<Monomial>) -> Self {
        debug_assert_eq!(entries.len(), rows * cols);
        Self {
            rows,
            cols,
            entries,
        }
    }

    /// A 1×1 composition.
    pub fn singleton(m: Monomial) -> Result<Self> {
        Self::from_row_major(1, 1, vec![m])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn size(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    pub fn get(&self, r: usize, c: usize) -> &Monomial {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Monomial] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Monomial] {
        &self.entries
    }

    pub fn alphabet_size(&self) -> Option<usize> {
        self.entries.first().map(Monomial::alphabet_size)
    }

    /// Total monomial degree of all entries.
    pub fn degree(&self) -> usize {
        self.entries.iter().map(Monomial::degree).sum()
    }

    /// Entries in column-major order.
    pub fn vectorize(&self) -> impl Iterator<Item = &Monomial> + '_ {
        (0..self.cols).flat_map(move |c| (0..self.rows).map(move |r| self.get(r, c)))
    }

    /// Block-diagonal placement with ε fill; the empty composition is neutral.
    ///
    /// # Panics
    /// If both operands are nonempty and live over different alphabets.
    pub fn diag_concat(&self, other: &Self) -> Self {
        if self.is_empty() {
            return other.clone();
        }
        if other.is_empty() {
            return self.clone();
        }
        let d = self.alphabet_size().unwrap();
        assert_eq!(
            Some(d),
            other.alphabet_size(),
            "diag_concat across different alphabets"
        );
        let eps = Alphabet::new(d).unwrap().epsilon();
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..self.rows {
            entries.extend_from_slice(self.row(r));
            entries.extend(std::iter::repeat_n(eps.clone(), other.cols));
        }
        for r in 0..other.rows {
            entries.extend(std::iter::repeat_n(eps.clone(), self.cols));
            entries.extend_from_slice(other.row(r));
        }
        Self::from_parts_unchecked(rows, cols, entries)
    }

    /// Diagonal concatenation of a sequence of compositions.
    pub fn diag<'a>(parts: impl IntoIterator<Item = &'a MatrixComposition>) -> Self {
        let parts: Vec<&MatrixComposition> = parts.into_iter().filter(|p| !p.is_empty()).collect();
        match parts.len() {
            0 => Self::empty(),
            1 => parts[0].clone(),
            _ => {
                let d = parts[0].alphabet_size().unwrap();
                assert!(
                    parts.iter().all(|p| p.alphabet_size() == Some(d)),
                    "diag across different alphabets"
                );
                let eps = Alphabet::new(d).unwrap().epsilon();
                let rows: usize = parts.iter().map(|p| p.rows).sum();
                let cols: usize = parts.iter().map(|p| p.cols).sum();
                let mut entries = Vec::with_capacity(rows * cols);
                let mut left = 0;
                for p in &parts {
                    let right = cols - left - p.cols;
                    for r in 0..p.rows {
                        entries.extend(std::iter::repeat_n(eps.clone(), left));
                        entries.extend_from_slice(p.row(r));
                        entries.extend(std::iter::repeat_n(eps.clone(), right));
                    }
                    left += p.cols;
                }
                Self::from_parts_unchecked(rows, cols, entries)
            }
        }
    }

    /// Row and column offsets of the maximal diagonal decomposition.
    ///
    /// Position `r` starts a new block iff every non-ε entry of rows `< r`
    /// lies strictly left of every non-ε entry of rows `>= r`; the column
    /// boundary is then one past the last non-ε column above.
    pub fn block_bounds(&self) -> Vec<BlockBounds> {
        if self.is_empty() {
            return Vec::new();
        }
        let first: Vec<usize> = (0..self.rows)
            .map(|r| self.row(r).iter().position(|m| !m.is_epsilon()).unwrap())
            .collect();
        let last: Vec<usize> = (0..self.rows)
            .map(|r| self.row(r).iter().rposition(|m| !m.is_epsilon()).unwrap())
            .collect();
        let mut suffix_min = vec![usize::MAX; self.rows + 1];
        for r in (0..self.rows).rev() {
            suffix_min[r] = suffix_min[r + 1].min(first[r]);
        }
        let mut bounds = Vec::new();
        let (mut r0, mut c0) = (0, 0);
        let mut prefix_max = 0;
        for r in 1..self.rows {
            prefix_max = prefix_max.max(last[r - 1]);
            if prefix_max < suffix_min[r] {
                let c = prefix_max + 1;
                bounds.push(BlockBounds {
                    rows: r0..r,
                    cols: c0..c,
                });
                r0 = r;
                c0 = c;
            }
        }
        bounds.push(BlockBounds {
            rows: r0..self.rows,
            cols: c0..self.cols,
        });
        bounds
    }

    /// Number of connected blocks; `len` of the associated word.
    pub fn block_count(&self) -> usize {
        self.block_bounds().len()
    }

    pub fn is_connected(&self) -> bool {
        !self.is_empty() && self.block_count() == 1
    }

    pub fn submatrix(&self, b: &BlockBounds) -> Self {
        let mut entries = Vec::with_capacity(b.rows.len() * b.cols.len());
        for r in b.rows.clone() {
            entries.extend_from_slice(&self.row(r)[b.cols.clone()]);
        }
        Self::from_parts_unchecked(b.rows.len(), b.cols.len(), entries)
    }

    /// The unique decomposition into connected compositions.
    pub fn block_decompose(&self) -> Word {
        Word(
            self.block_bounds()
                .iter()
                .map(|b| self.submatrix(b))
                .collect(),
        )
    }

    fn block_view(&self, b: &BlockBounds) -> View<'_> {
        View {
            src: self,
            r0: b.rows.start,
            rows: b.rows.len(),
            c0: b.cols.start,
            cols: b.cols.len(),
        }
    }

    fn full_view(&self) -> View<'_> {
        View {
            src: self,
            r0: 0,
            rows: self.rows,
            c0: 0,
            cols: self.cols,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockBounds {
    pub rows: std::ops::Range<usize>,
    pub cols: std::ops::Range<usize>,
}

#[derive(Clone, Copy)]
struct View<'a> {
    src: &'a MatrixComposition,
    r0: usize,
    rows: usize,
    c0: usize,
    cols: usize,
}

impl View<'_> {
    fn cmp_letter(&self, other: &View<'_>) -> Ordering {
        self.rows
            .cmp(&other.rows)
            .then(self.cols.cmp(&other.cols))
            .then_with(|| {
                for c in 0..self.cols {
                    for r in 0..self.rows {
                        let a = self.src.get(self.r0 + r, self.c0 + c);
                        let b = other.src.get(other.r0 + r, other.c0 + c);
                        match a.cmp(b) {
                            Ordering::Equal => {}
                            o => return o,
                        }
                    }
                }
                Ordering::Equal
            })
    }
}

/// Order on connected compositions: the empty composition first, then by
/// rows, then by columns, then deg-lex on the column-major entry vector.
pub fn cmp_connected(a: &MatrixComposition, b: &MatrixComposition) -> Result<Ordering> {
    for x in [a, b] {
        if !x.is_empty() {
            let blocks = x.block_count();
            if blocks != 1 {
                return Err(Error::NotConnected { blocks });
            }
        }
    }
    Ok(match (a.is_empty(), b.is_empty()) {
        (true, true) => Ordering::Equal,
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => a.full_view().cmp_letter(&b.full_view()),
    })
}

/// The graded lexicographic order on the block words.
impl Ord for MatrixComposition {
    fn cmp(&self, other: &Self) -> Ordering {
        let ba = self.block_bounds();
        let bb = other.block_bounds();
        ba.len().cmp(&bb.len()).then_with(|| {
            ba.iter()
                .zip(bb.iter())
                .map(|(x, y)| self.block_view(x).cmp_letter(&other.block_view(y)))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for MatrixComposition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MatrixComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        let sep = if self.cols > 1 { "; " } else { ";" };
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(sep)?;
            }
            for (j, m) in self.row(r).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{m}")?;
            }
        }
        f.write_str("]")
    }
}

impl fmt::Debug for MatrixComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A word over connected compositions.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<MatrixComposition>);

impl Word {
    pub fn new(letters: Vec<MatrixComposition>) -> Result<Self> {
        if letters.iter().any(|l| !l.is_connected()) {
            return Err(Error::InvalidLetter);
        }
        Ok(Self(letters))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[MatrixComposition] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Subword `[start, end)`; letters are already validated.
    pub fn slice(&self, range: std::ops::Range<usize>) -> Word {
        Word(self.0[range].to_vec())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Diagonal concatenation of the letters.
    pub fn to_composition(&self) -> MatrixComposition {
        MatrixComposition::diag(self.0.iter())
    }

    /// Lexicographic order: first differing letter decides, a proper
    /// prefix is smaller.
    pub fn cmp_lex(&self, other: &Word) -> Ordering {
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            match a.full_view().cmp_letter(&b.full_view()) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        self.0.len().cmp(&other.0.len())
    }

    /// Length first, then lexicographic.
    pub fn cmp_grlex(&self, other: &Word) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.cmp_lex(other))
    }
}

/// Lexicographic order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_lex(other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("[]");
        }
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A classical composition of a non-negative integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntComposition {
    parts: Vec<usize>,
}

impl IntComposition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::ZeroPart);
        }
        Ok(Self { parts })
    }

    /// Validates that the parts sum to `target`.
    pub fn of(parts: Vec<usize>, target: usize) -> Result<Self> {
        let c = Self::new(parts)?;
        if c.target() != target {
            return Err(Error::CompositionSum {
                found: c.target(),
                expected: target,
            });
        }
        Ok(c)
    }

    pub fn ones(n: usize) -> Self {
        Self { parts: vec![1; n] }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn target(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `I! = I1! ⋯ Iℓ!`
    pub fn factorial(&self) -> BigUint {
        self.parts
            .iter()
            .flat_map(|&p| 1..=p)
            .fold(BigUint::one(), |acc, k| acc * k)
    }

    /// `I1 ⋯ Iℓ`
    pub fn part_product(&self) -> BigUint {
        self.parts
            .iter()
            .fold(BigUint::one(), |acc, &p| acc * p)
    }

    /// All `2^(n-1)` compositions of `n` (the empty one for `n = 0`).
    pub fn all(n: usize) -> Vec<IntComposition> {
        if n == 0 {
            return vec![Self { parts: Vec::new() }];
        }
        (0u64..1 << (n - 1))
            .map(|mask| {
                let mut parts = Vec::new();
                let mut run = 1;
                for bit in 0..n - 1 {
                    if mask >> bit & 1 == 1 {
                        parts.push(run);
                        run = 1;
                    } else {
                        run += 1;
                    }
                }
                parts.push(run);
                Self { parts }
            })
            .collect()
    }

    /// Compositions of `n` with exactly `k` parts.
    pub fn with_len(n: usize, k: usize) -> Vec<IntComposition> {
        Self::all(n).into_iter().filter(|c| c.len() == k).collect()
    }

    /// Half-open index ranges of the consecutive groups.
    pub fn ranges(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        self.parts.iter().scan(0, |start, &p| {
            let r = *start..*start + p;
            *start += p;
            Some(r)
        })
    }
}
