//! Inputs shared by the benchmarks.

use matcomp::text::{parse_composition, parse_element};
use matcomp::{Alphabet, HElement, MatrixComposition};

pub fn alphabet() -> Alphabet {
    Alphabet::new(4).expect("nonzero size")
}

pub fn comp(src: &str) -> MatrixComposition {
    parse_composition(src, alphabet()).expect("valid literal")
}

pub fn element(src: &str) -> HElement {
    parse_element(src, alphabet()).expect("valid literal")
}

/// Operand pairs of growing size for the products.
pub fn product_operands() -> Vec<(&'static str, MatrixComposition, MatrixComposition)> {
    vec![
        ("1x1 by 1x2", comp("[1]"), comp("[2 3]")),
        ("2x2 by 2x1", comp("[1 e; e 2]"), comp("[3;4]")),
        ("2x2 by 2x2", comp("[1 2; e 3]"), comp("[4 e; 1 2]")),
        ("3x3 by 2x2", comp("[1 e e; e 2 e; e e 3]"), comp("[4 1; e 2]")),
    ]
}
