//! Exhaustive enumeration of compositions up to a degree bound and seeded
//! uniform sampling from the resulting pool.

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{HElement, Rational};
use crate::composition::MatrixComposition;
use crate::monoid::{Alphabet, Monomial};

/// Every nonempty composition of total degree `1..=max_degree`, sorted.
pub fn enumerate_compositions(alphabet: Alphabet, max_degree: usize) -> Vec<MatrixComposition> {
    let by_degree: Vec<Vec<Monomial>> = (0..=max_degree).map(|k| alphabet.monomials_of_degree(k)).collect();
    let eps = alphabet.epsilon();
    let mut out = Vec::new();
    // k nonempty cells cover at most k rows and k columns.
    for k in 1..=max_degree {
        for rows in 1..=k {
            for cols in 1..=k {
                for cells in (0..rows * cols).combinations(k) {
                    let covers_rows = (0..rows).all(|r| cells.iter().any(|&p| p / cols == r));
                    let covers_cols = (0..cols).all(|c| cells.iter().any(|&p| p % cols == c));
                    if !covers_rows || !covers_cols {
                        continue;
                    }
                    let mut entries = vec![eps.clone(); rows * cols];
                    fill(&cells, max_degree, &by_degree, &mut entries, &mut |e| {
                        out.push(
                            MatrixComposition::from_row_major(rows, cols, e.to_vec())
                                .expect("every row and column has a nonempty cell"),
                        )
                    });
                }
            }
        }
    }
    out.sort();
    out
}

fn fill(
    cells: &[usize],
    budget: usize,
    by_degree: &[Vec<Monomial>],
    entries: &mut Vec<Monomial>,
    emit: &mut impl FnMut(&[Monomial]),
) {
    let Some((&cell, rest)) = cells.split_first() else {
        emit(entries);
        return;
    };
    // Leave at least one degree for each remaining cell.
    for deg in 1..=budget.saturating_sub(rest.len()) {
        for m in &by_degree[deg] {
            entries[cell] = m.clone();
            fill(rest, budget - deg, by_degree, entries, emit);
        }
    }
}

/// A deterministic pool of compositions with a seeded sampler.
pub struct Sampler {
    pool: Vec<MatrixComposition>,
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(pool: Vec<MatrixComposition>, seed: u64) -> Self {
        assert!(!pool.is_empty(), "sampling pool is empty");
        Self {
            pool,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Pool of all compositions up to `max_degree` with at most `max_blocks` blocks.
    pub fn up_to(alphabet: Alphabet, max_degree: usize, max_blocks: usize, seed: u64) -> Self {
        let pool = enumerate_compositions(alphabet, max_degree)
            .into_iter()
            .filter(|a| a.block_count() <= max_blocks)
            .collect();
        Self::new(pool, seed)
    }

    pub fn pool(&self) -> &[MatrixComposition] {
        &self.pool
    }

    pub fn composition(&mut self) -> MatrixComposition {
        self.pool.choose(&mut self.rng).expect("pool is nonempty").clone()
    }

    /// A composition satisfying `keep`, or `None` if no pool member does.
    pub fn composition_where(&mut self, keep: impl Fn(&MatrixComposition) -> bool) -> Option<MatrixComposition> {
        let eligible: Vec<&MatrixComposition> = self.pool.iter().filter(|a| keep(a)).collect();
        eligible.choose(&mut self.rng).map(|a| (*a).clone())
    }

    /// A linear combination of up to `max_terms` pool members with small
    /// nonzero rational coefficients.
    pub fn element(&mut self, max_terms: usize) -> HElement {
        let n = self.rng.gen_range(1..=max_terms.max(1));
        let mut x = HElement::zero();
        for _ in 0..n {
            let num: i64 = self.rng.gen_range(1..=3) * if self.rng.gen_bool(0.5) { 1 } else { -1 };
            let den: i64 = self.rng.gen_range(1..=3);
            x.add_term(self.composition(), Rational::new(num.into(), den.into()));
        }
        x
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}
