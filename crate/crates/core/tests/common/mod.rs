#![allow(dead_code)]

use matcomp::text::{parse_composition, parse_element, parse_word};
use matcomp::{Alphabet, HElement, MatrixComposition, Monomial, Rational, Word};
use proptest::prelude::*;

pub const D: usize = 3;

pub fn ab() -> Alphabet {
    Alphabet::new(4).unwrap()
}

pub fn c(s: &str) -> MatrixComposition {
    parse_composition(s, ab()).unwrap()
}

pub fn el(s: &str) -> HElement {
    parse_element(s, ab()).unwrap()
}

pub fn w(s: &str) -> Word {
    parse_word(s, ab()).unwrap()
}

pub fn monomial(max_degree: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(1..=D, 0..=max_degree)
        .prop_map(|letters| Alphabet::new(D).unwrap().from_letters(&letters).unwrap())
}

fn cell() -> impl Strategy<Value = Monomial> {
    let eps = Alphabet::new(D).unwrap().epsilon();
    prop_oneof![
        3 => Just(eps),
        2 => (1..=D).prop_map(|l| Alphabet::new(D).unwrap().letter(l).unwrap()),
        1 => monomial(2),
    ]
}

/// Nonempty compositions over a 3-letter alphabet with bounded size.
pub fn composition(max_rows: usize, max_cols: usize) -> impl Strategy<Value = MatrixComposition> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(cell(), r * c)
            .prop_filter_map("ε-row or ε-column", move |e| MatrixComposition::from_row_major(r, c, e).ok())
    })
}

/// Diagonal concatenation of up to `max_blocks` small compositions.
pub fn blocky(max_blocks: usize) -> impl Strategy<Value = MatrixComposition> {
    prop::collection::vec(composition(2, 2), 1..=max_blocks).prop_map(|parts| MatrixComposition::diag(parts.iter()))
}

pub fn coefficient() -> impl Strategy<Value = Rational> {
    (1i64..=4, 1i64..=3, any::<bool>())
        .prop_map(|(n, d, neg)| Rational::new((if neg { -n } else { n }).into(), d.into()))
}

pub fn element(max_terms: usize, part: impl Strategy<Value = MatrixComposition>) -> impl Strategy<Value = HElement> {
    prop::collection::vec((coefficient(), part), 1..=max_terms).prop_map(HElement::from_terms)
}

/// `blocky` with the total shape bounded.
pub fn bounded(max_blocks: usize, max_rows: usize, max_cols: usize) -> impl Strategy<Value = MatrixComposition> {
    blocky(max_blocks).prop_filter("too large", move |a| a.rows() <= max_rows && a.cols() <= max_cols)
}
