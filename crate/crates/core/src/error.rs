use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet must have at least one letter")]
    EmptyAlphabet,
    #[error("alphabet mismatch: {left} letters vs {right} letters")]
    AlphabetMismatch { left: usize, right: usize },
    #[error("letter {letter} is outside the alphabet 1..={size}")]
    LetterOutOfRange { letter: usize, size: usize },
    #[error("exponent overflow in monomial product")]
    ExponentOverflow,
    /// Indices in the ε-row/column variants are 0-based; messages print them 1-based.
    #[error("grid is not rectangular: row {row} has {found} entries, expected {expected}")]
    Ragged { row: usize, found: usize, expected: usize },
    #[error("row {} contains only ε", .0 + 1)]
    EpsilonRow(usize),
    #[error("column {} contains only ε", .0 + 1)]
    EpsilonColumn(usize),
    #[error("composition is not connected ({blocks} blocks)")]
    NotConnected { blocks: usize },
    #[error("word letters must be connected nonempty compositions")]
    InvalidLetter,
    #[error("leading monomial of the zero element")]
    ZeroElement,
    #[error("empty word has no factorization")]
    EmptyWord,
    #[error("word is not a Lyndon word")]
    NotLyndon,
    #[error("integer composition sums to {found}, expected {expected}")]
    CompositionSum { found: usize, expected: usize },
    #[error("integer composition parts must be positive")]
    ZeroPart,
    #[error("operand must be nonempty")]
    EmptyOperand,
    #[error("enumeration of {requested} index tuples exceeds the cap of {cap}")]
    SizeCap { requested: u128, cap: u64 },
    #[error("series truncated at order {have}, needs order {needed}")]
    Truncation { needed: usize, have: usize },
    #[error("map output contains the disconnected composition {0}")]
    DisconnectedOutput(String),
    #[error("map does not vanish on the empty composition, so its convolution powers are not nilpotent")]
    NotNilpotent,
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
