//! One-hot matrix encodings of interleavings and the matrix-action form of
//! the three products. Slow by design; used to cross-check `products`.

use itertools::Itertools;
use rustc_hash::FxHashMap;

use crate::algebra::{HElement, Rational};
use crate::composition::MatrixComposition;
use crate::error::{Error, Result};
use crate::limits;
use crate::monoid::Alphabet;
use crate::products::{Interleaving, Product};

/// A 0/1 matrix acting on the rows (or columns) of a monoid matrix: output
/// row `x` is the ⋆-product of the input rows `i` with `self[x][i] = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OneHot {
    rows: usize,
    cols: usize,
    bits: Vec<bool>,
}

impl OneHot {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            bits: vec![false; rows * cols],
        }
    }

    /// Column `i` is the unit vector at the image of `i`.
    pub fn from_interleaving(p: &Interleaving) -> Self {
        Self::from_map(p.target(), p.image())
    }

    /// `target × map.len()` matrix with a single 1 per column at `map[i]`.
    pub fn from_map(target: usize, map: &[usize]) -> Self {
        let mut m = Self::zeros(target, map.len());
        for (i, &t) in map.iter().enumerate() {
            m.set(t, i);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.bits[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize) {
        self.bits[r * self.cols + c] = true;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r);
                }
            }
        }
        t
    }

    /// `P · A · Qᵀ` over the monoid; `None` if the result has an ε-row or
    /// ε-column.
    pub fn act(p: &OneHot, a: &MatrixComposition, q: &OneHot) -> Option<MatrixComposition> {
        assert_eq!(p.cols, a.rows(), "row action size mismatch");
        assert_eq!(q.cols, a.cols(), "column action size mismatch");
        let eps = Alphabet::new(a.get(0, 0).alphabet_size()).ok()?.epsilon();
        let mut entries = Vec::with_capacity(p.rows * q.rows);
        for x in 0..p.rows {
            for y in 0..q.rows {
                let mut m = eps.clone();
                for i in (0..a.rows()).filter(|&i| p.get(x, i)) {
                    for j in (0..a.cols()).filter(|&j| q.get(y, j)) {
                        m.star_assign(a.get(i, j));
                    }
                }
                entries.push(m);
            }
        }
        MatrixComposition::from_row_major(p.rows, q.rows, entries).ok()
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn monotone(s: &[usize]) -> bool {
    s.windows(2).all(|w| w[0] < w[1])
}

/// SH(m, s) by filtering all permutations of `m + s`.
pub fn brute_shuffles(m: usize, s: usize) -> Result<Vec<OneHot>> {
    let n = m + s;
    limits::check(factorial(n))?;
    Ok((0..n)
        .permutations(n)
        .filter(|p| monotone(&p[..m]) && monotone(&p[m..]))
        .map(|p| OneHot::from_map(n, &p))
        .collect())
}

/// QSH(m, s; j) for all admissible `j`, by filtering all maps into `0..j`.
pub fn brute_quasi_shuffles(m: usize, s: usize) -> Result<Vec<OneHot>> {
    let n = m + s;
    let lo = m.max(s);
    limits::check((lo..=n).map(|j| (j as u128).pow(n as u32)).sum())?;
    let mut out = Vec::new();
    for j in lo..=n {
        for f in (0..n).map(|_| 0..j).multi_cartesian_product() {
            let surjective = (0..j).all(|t| f.contains(&t));
            if surjective && monotone(&f[..m]) && monotone(&f[m..]) {
                out.push(OneHot::from_map(j, &f));
            }
        }
    }
    Ok(out)
}

/// Block permutation moving block `i` (of the given sizes) to block slot `sigma[i]`.
fn block_matrix(sizes: &[usize], sigma: &[usize]) -> OneHot {
    let mut order = vec![0; sizes.len()];
    for (i, &t) in sigma.iter().enumerate() {
        order[t] = i;
    }
    let mut dest_start = vec![0; sizes.len()];
    let mut pos = 0;
    for &b in &order {
        dest_start[b] = pos;
        pos += sizes[b];
    }
    let mut map = Vec::with_capacity(pos);
    for (b, &size) in sizes.iter().enumerate() {
        map.extend((0..size).map(|k| dest_start[b] + k));
    }
    OneHot::from_map(pos, &map)
}

/// The block shuffle action matrices `(P, Q)` for every σ ∈ SH(len a, len b).
pub fn brute_block_shuffles(
    a: &MatrixComposition,
    b: &MatrixComposition,
) -> Result<Vec<(OneHot, OneHot)>> {
    let bounds: Vec<_> = a.block_bounds().into_iter().chain(b.block_bounds()).collect();
    let row_sizes: Vec<_> = bounds.iter().map(|bb| bb.rows.len()).collect();
    let col_sizes: Vec<_> = bounds.iter().map(|bb| bb.cols.len()).collect();
    let (la, lb) = (a.block_count(), b.block_count());
    let n = la + lb;
    limits::check(factorial(n))?;
    Ok((0..n)
        .permutations(n)
        .filter(|p| monotone(&p[..la]) && monotone(&p[la..]))
        .map(|sigma| (block_matrix(&row_sizes, &sigma), block_matrix(&col_sizes, &sigma)))
        .collect())
}

/// Computes `a · b` as a sum of `P diag(a, b) Qᵀ` over the one-hot encodings.
pub fn product_via_matrix_encoding(
    kind: Product,
    a: &MatrixComposition,
    b: &MatrixComposition,
) -> Result<HElement> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyOperand);
    }
    if let (Some(x), Some(y)) = (a.alphabet_size(), b.alphabet_size()) {
        if x != y {
            return Err(Error::AlphabetMismatch { left: x, right: y });
        }
    }
    let d = a.diag_concat(b);
    let pairs: Vec<(OneHot, OneHot)> = match kind {
        Product::BlockShuffle => brute_block_shuffles(a, b)?,
        Product::Shuffle2 | Product::QuasiShuffle => {
            let gen = if kind == Product::Shuffle2 {
                brute_shuffles
            } else {
                brute_quasi_shuffles
            };
            let ps = gen(a.rows(), b.rows())?;
            let qs = gen(a.cols(), b.cols())?;
            limits::check(ps.len() as u128 * qs.len() as u128)?;
            ps.iter()
                .cartesian_product(qs.iter())
                .map(|(p, q)| (p.clone(), q.clone()))
                .collect()
        }
    };
    let mut counts: FxHashMap<MatrixComposition, i64> = FxHashMap::default();
    for (p, q) in &pairs {
        let c = OneHot::act(p, &d, q).expect("interleavings never create ε-rows or ε-columns");
        *counts.entry(c).or_insert(0) += 1;
    }
    Ok(counts
        .into_iter()
        .map(|(c, n)| (Rational::from_integer(n.into()), c))
        .collect())
}
