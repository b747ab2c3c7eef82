//! Row/column merge actions, the two-parameter Hoffman map Φ with its
//! inverse, and evaluation maps `ev_{f,g}` indexed by power series.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{HElement, Rational};
use crate::composition::{IntComposition, MatrixComposition};
use crate::error::{Error, Result};
use crate::limits;

/// `a_{I,J}`: merges consecutive row groups of sizes `I` with ⋆, then
/// consecutive column groups of sizes `J`.
pub fn merge_action(a: &MatrixComposition, i: &IntComposition, j: &IntComposition) -> Result<MatrixComposition> {
    if i.target() != a.rows() {
        return Err(Error::CompositionSum {
            found: i.target(),
            expected: a.rows(),
        });
    }
    if j.target() != a.cols() {
        return Err(Error::CompositionSum {
            found: j.target(),
            expected: a.cols(),
        });
    }
    if a.is_empty() {
        return Ok(MatrixComposition::empty());
    }
    let mut entries = Vec::with_capacity(i.len() * j.len());
    for rows in i.ranges() {
        for cols in j.ranges() {
            let mut m = a.get(rows.start, cols.start).clone();
            for r in rows.clone() {
                for c in cols.clone() {
                    if (r, c) != (rows.start, cols.start) {
                        m.star_assign(a.get(r, c));
                    }
                }
            }
            entries.push(m);
        }
    }
    Ok(MatrixComposition::from_parts_unchecked(i.len(), j.len(), entries))
}

/// Sum over all `(I, J)` of `weight(I, J) · a_{I,J}`.
fn merge_sum(
    x: &HElement,
    mut weight: impl FnMut(&IntComposition, &IntComposition) -> Result<Rational>,
) -> Result<HElement> {
    let mut out = HElement::zero();
    for (a, c) in x.iter() {
        if a.is_empty() {
            out.add_term(a.clone(), c.clone());
            continue;
        }
        limits::check(1u128 << (a.rows() - 1 + a.cols() - 1))?;
        let rows = IntComposition::all(a.rows());
        let cols = IntComposition::all(a.cols());
        for i in &rows {
            for j in &cols {
                let w = weight(i, j)?;
                if !w.is_zero() {
                    out.add_term(merge_action(a, i, j)?, c * w);
                }
            }
        }
    }
    Ok(out)
}

/// `Φ(a) = Σ 1/(I! J!) a_{I,J}`.
pub fn phi(x: &HElement) -> Result<HElement> {
    merge_sum(x, |i, j| {
        let den = BigInt::from(i.factorial() * j.factorial());
        Ok(Rational::new(BigInt::one(), den))
    })
}

/// `Φ⁻¹(a) = Σ (−1)^{rows − len I + cols − len J} / (∏I ∏J) a_{I,J}`.
pub fn phi_inv(x: &HElement) -> Result<HElement> {
    merge_sum(x, |i, j| {
        let flips = i.target() - i.len() + j.target() - j.len();
        let sign = if flips % 2 == 0 { 1 } else { -1 };
        let den = BigInt::from(i.part_product() * j.part_product());
        Ok(Rational::new(BigInt::from(sign), den))
    })
}

/// Coefficients `c_1, c_2, …` of a power series without constant term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesCoeffs {
    coeffs: Vec<Rational>,
    /// A polynomial: coefficients past the end are exactly zero.
    exact: bool,
}

impl SeriesCoeffs {
    /// A series known up to `t^{coeffs.len()}`.
    pub fn truncated(coeffs: Vec<Rational>) -> Self {
        Self { coeffs, exact: false }
    }

    /// A polynomial, known to every order.
    pub fn polynomial(coeffs: Vec<Rational>) -> Self {
        Self { coeffs, exact: true }
    }

    /// The identity series `t`.
    pub fn t() -> Self {
        Self::polynomial(vec![Rational::one()])
    }

    /// `e^t − 1` to the given order.
    pub fn exp1(order: usize) -> Self {
        let mut fact = BigInt::one();
        let coeffs = (1..=order)
            .map(|k| {
                fact *= k;
                Rational::new(BigInt::one(), fact.clone())
            })
            .collect();
        Self::truncated(coeffs)
    }

    /// `log(1 + t)` to the given order.
    pub fn log1p(order: usize) -> Self {
        let coeffs = (1..=order)
            .map(|k| {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                Rational::new(BigInt::from(sign), BigInt::from(k))
            })
            .collect();
        Self::truncated(coeffs)
    }

    /// Highest known order, `None` for polynomials.
    pub fn order(&self) -> Option<usize> {
        (!self.exact).then_some(self.coeffs.len())
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Stored coefficients, `c_1` first.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `[t^k]`, for `k ≥ 1`.
    pub fn coeff(&self, k: usize) -> Result<Rational> {
        assert!(k >= 1, "series have no constant term");
        match self.coeffs.get(k - 1) {
            Some(c) => Ok(c.clone()),
            None if self.exact => Ok(Rational::zero()),
            None => Err(Error::Truncation {
                needed: k,
                have: self.coeffs.len(),
            }),
        }
    }

    /// The first `order` coefficients; errors if they are not all known.
    pub fn to_order(&self, order: usize) -> Result<Vec<Rational>> {
        (1..=order).map(|k| self.coeff(k)).collect()
    }
}

/// `ev_{f,g}(a) = Σ f_{I_1}⋯f_{I_len} g_{J_1}⋯g_{J_len} a_{I,J}`.
pub fn evaluate_map(f: &SeriesCoeffs, g: &SeriesCoeffs, x: &HElement) -> Result<HElement> {
    let rows = x.iter().map(|(a, _)| a.rows()).max().unwrap_or(0);
    let cols = x.iter().map(|(a, _)| a.cols()).max().unwrap_or(0);
    let fc = f.to_order(rows)?;
    let gc = g.to_order(cols)?;
    merge_sum(x, |i, j| {
        let mut w = Rational::one();
        for &p in i.parts() {
            w *= &fc[p - 1];
        }
        for &p in j.parts() {
            w *= &gc[p - 1];
        }
        Ok(w)
    })
}

/// Coefficients of `f ∘ g` up to `order`, via `[t^k](f∘g) = Σ_j [t^j]f [t^k]g^j`.
pub fn series_compose(f: &SeriesCoeffs, g: &SeriesCoeffs, order: usize) -> Result<SeriesCoeffs> {
    let gc = g.to_order(order)?;
    // power[k] = [t^k] g^j, index 0 unused.
    let mut power = vec![Rational::zero(); order + 1];
    for (k, c) in gc.iter().enumerate() {
        power[k + 1] = c.clone();
    }
    let mut out = vec![Rational::zero(); order + 1];
    for j in 1..=order {
        if j > 1 {
            let mut next = vec![Rational::zero(); order + 1];
            for (a, pa) in power.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                for (b, gb) in gc.iter().enumerate() {
                    let deg = a + b + 1;
                    if deg > order {
                        break;
                    }
                    next[deg] += pa * gb;
                }
            }
            power = next;
        }
        let fj = f.coeff(j)?;
        if fj.is_zero() {
            continue;
        }
        for k in j..=order {
            out[k] += &fj * &power[k];
        }
    }
    out.remove(0);
    Ok(SeriesCoeffs::truncated(out))
}
