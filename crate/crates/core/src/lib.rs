pub mod algebra;
pub mod coalgebra;
pub mod cofree;
pub mod composition;
pub mod encoding;
pub mod error;
pub mod hoffman;
pub mod limits;
pub mod lyndon;
pub mod monoid;
pub mod products;
pub mod sample;
pub mod text;

pub use algebra::{q, qi, HElement, HTensor, LinComb, MultiTensor, Rational};
pub use composition::{cmp_connected, IntComposition, MatrixComposition, Word};
pub use error::{Error, Result};
pub use monoid::{Alphabet, Monomial};
pub use products::Product;
