//! Enumeration guard shared by every combinatorial kernel.
//!
//! The cap bounds the number of index tuples a single basis-level
//! enumeration may visit (pairs of row/column interleavings, pairs of
//! integer compositions, ...). It is held per thread so independent
//! computations can run with different caps.

use std::cell::Cell;

use crate::error::{Error, Result};

pub const DEFAULT_MAX_TERMS: u64 = 1_000_000;

thread_local! {
    static MAX_TERMS: Cell<u64> = const { Cell::new(DEFAULT_MAX_TERMS) };
}

pub fn max_terms() -> u64 {
    MAX_TERMS.with(Cell::get)
}

/// Sets the cap for the current thread.
pub fn set_max_terms(cap: u64) {
    MAX_TERMS.with(|c| c.set(cap));
}

/// Runs `f` with a temporary cap, restoring the previous value afterwards.
pub fn with_max_terms<T>(cap: u64, f: impl FnOnce() -> T) -> T {
    struct Restore(u64);
    impl Drop for Restore {
        fn drop(&mut self) {
            set_max_terms(self.0);
        }
    }
    let _restore = Restore(max_terms());
    set_max_terms(cap);
    f()
}

pub(crate) fn check(requested: u128) -> Result<()> {
    let cap = max_terms();
    if requested > cap as u128 {
        Err(Error::SizeCap { requested, cap })
    } else {
        Ok(())
    }
}
