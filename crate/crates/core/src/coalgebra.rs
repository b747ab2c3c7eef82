//! Deconcatenation coproduct, counit, antipode and the convolution algebra
//! of linear endomaps, including the Eulerian idempotent.

use std::cell::RefCell;
use std::ops::Range;

use num_bigint::BigInt;
use num_traits::One;
use rustc_hash::FxHashMap;

use crate::algebra::{HElement, HTensor, MultiTensor, Rational};
use crate::composition::{IntComposition, MatrixComposition, Word};
use crate::error::{Error, Result};
use crate::products::Product;

/// A linear endomap of H given by its values on basis compositions.
pub trait LinearMap {
    fn apply_basis(&self, a: &MatrixComposition) -> Result<HElement>;

    fn apply(&self, x: &HElement) -> Result<HElement> {
        x.map_linear(|a| self.apply_basis(a))
    }
}

impl<F> LinearMap for F
where
    F: Fn(&MatrixComposition) -> Result<HElement>,
{
    fn apply_basis(&self, a: &MatrixComposition) -> Result<HElement> {
        self(a)
    }
}

/// Memoizes a linear map on basis compositions for the lifetime of the wrapper.
pub struct Cached<'a> {
    inner: &'a dyn LinearMap,
    memo: RefCell<FxHashMap<MatrixComposition, HElement>>,
}

impl<'a> Cached<'a> {
    pub fn new(inner: &'a dyn LinearMap) -> Self {
        Self {
            inner,
            memo: RefCell::default(),
        }
    }
}

impl LinearMap for Cached<'_> {
    fn apply_basis(&self, a: &MatrixComposition) -> Result<HElement> {
        if let Some(v) = self.memo.borrow().get(a) {
            return Ok(v.clone());
        }
        let v = self.inner.apply_basis(a)?;
        self.memo.borrow_mut().insert(a.clone(), v.clone());
        Ok(v)
    }
}

pub struct Identity;

impl LinearMap for Identity {
    fn apply_basis(&self, a: &MatrixComposition) -> Result<HElement> {
        Ok(HElement::basis(a.clone()))
    }
}

/// `unit ∘ counit`, the unit of convolution.
pub struct UnitCounit;

impl LinearMap for UnitCounit {
    fn apply_basis(&self, a: &MatrixComposition) -> Result<HElement> {
        Ok(if a.is_empty() { HElement::unit() } else { HElement::zero() })
    }
}

/// `id − unit ∘ counit`, the projection onto the augmentation ideal.
pub struct AugmentationProjection;

impl LinearMap for AugmentationProjection {
    fn apply_basis(&self, a: &MatrixComposition) -> Result<HElement> {
        Ok(if a.is_empty() { HElement::zero() } else { HElement::basis(a.clone()) })
    }
}

pub fn coproduct(a: &MatrixComposition) -> HTensor {
    let w = a.block_decompose();
    let n = w.len();
    (0..=n)
        .map(|i| (Rational::one(), (w.slice(0..i).to_composition(), w.slice(i..n).to_composition())))
        .collect()
}

pub fn coproduct_element(x: &HElement) -> HTensor {
    let mut out = HTensor::zero();
    for (a, c) in x.iter() {
        out.add_scaled(c, &coproduct(a));
    }
    out
}

/// The coefficient of ẽ.
pub fn counit(x: &HElement) -> Rational {
    x.coeff(&MatrixComposition::empty())
}

/// `Δ(x) − x ⊗ ẽ − ẽ ⊗ x`, applied to the augmentation part of `x`.
pub fn reduced_coproduct(x: &HElement) -> HTensor {
    let mut out = HTensor::zero();
    for (a, c) in x.iter() {
        let w = a.block_decompose();
        let n = w.len();
        for i in 1..n {
            out.add_term((w.slice(0..i).to_composition(), w.slice(i..n).to_composition()), c.clone());
        }
    }
    out
}

/// Splits of `0..len` into `k` nonempty consecutive ranges.
pub(crate) fn nonempty_splits(len: usize, k: usize) -> Vec<Vec<Range<usize>>> {
    IntComposition::with_len(len, k)
        .iter()
        .map(|c| c.ranges().collect())
        .collect()
}

/// Splits of `0..len` into `k` possibly empty consecutive ranges.
fn weak_splits(len: usize, k: usize) -> Vec<Vec<Range<usize>>> {
    if k == 0 {
        return if len == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    // Nonempty splits of len + k, each part shrunk by one.
    IntComposition::with_len(len + k, k)
        .iter()
        .map(|c| {
            let mut start = 0;
            c.parts()
                .iter()
                .map(|&p| {
                    let r = start..start + p - 1;
                    start += p - 1;
                    r
                })
                .collect()
        })
        .collect()
}

fn groups(w: &Word, split: &[Range<usize>]) -> Vec<MatrixComposition> {
    split.iter().map(|r| w.slice(r.clone()).to_composition()).collect()
}

/// `Δ̃^{(n)}(x)`: the `n + 1`-fold reduced coproduct; `n = 0` is the
/// projection onto the augmentation ideal.
pub fn iterated_reduced_coproduct(n: usize, x: &HElement) -> MultiTensor {
    let mut out = MultiTensor::zero();
    for (a, c) in x.iter() {
        if a.is_empty() {
            continue;
        }
        let w = a.block_decompose();
        for split in nonempty_splits(w.len(), n + 1) {
            out.add_term(groups(&w, &split), c.clone());
        }
    }
    out
}

/// `Δ^{(n)}(x)`: the `n + 1`-fold full coproduct, ẽ factors included.
pub fn iterated_coproduct(n: usize, x: &HElement) -> MultiTensor {
    let mut out = MultiTensor::zero();
    for (a, c) in x.iter() {
        let w = a.block_decompose();
        for split in weak_splits(w.len(), n + 1) {
            out.add_term(groups(&w, &split), c.clone());
        }
    }
    out
}

/// `(Δ ⊗ id)(t)` as a threefold tensor.
pub fn coproduct_left(t: &HTensor) -> MultiTensor {
    let mut out = MultiTensor::zero();
    for ((a, b), c) in t.iter() {
        for ((a1, a2), c1) in coproduct(a).iter() {
            out.add_term(vec![a1.clone(), a2.clone(), b.clone()], c * c1);
        }
    }
    out
}

/// `(id ⊗ Δ)(t)` as a threefold tensor.
pub fn coproduct_right(t: &HTensor) -> MultiTensor {
    let mut out = MultiTensor::zero();
    for ((a, b), c) in t.iter() {
        for ((b1, b2), c1) in coproduct(b).iter() {
            out.add_term(vec![a.clone(), b1.clone(), b2.clone()], c * c1);
        }
    }
    out
}

/// `(f ⊗ g)(t)`.
pub fn tensor_map(f: &dyn LinearMap, g: &dyn LinearMap, t: &HTensor) -> Result<HTensor> {
    let mut out = HTensor::zero();
    for ((a, b), c) in t.iter() {
        let fa = f.apply_basis(a)?;
        let gb = g.apply_basis(b)?;
        for (x, cx) in fa.iter() {
            for (y, cy) in gb.iter() {
                out.add_term((x.clone(), y.clone()), c * cx * cy);
            }
        }
    }
    Ok(out)
}

/// `m ∘ t`.
pub fn multiply_tensor(product: Product, t: &HTensor) -> Result<HElement> {
    let mut out = HElement::zero();
    for ((a, b), c) in t.iter() {
        out.add_scaled(c, &product.mul(a, b)?);
    }
    Ok(out)
}

/// Product in H ⊗ H: `(a ⊗ b)(c ⊗ d) = (a·c) ⊗ (b·d)`.
pub fn tensor_product(product: Product, s: &HTensor, t: &HTensor) -> Result<HTensor> {
    let mut out = HTensor::zero();
    for ((a, b), cs) in s.iter() {
        for ((c, d), ct) in t.iter() {
            let left = product.mul(a, c)?;
            let right = product.mul(b, d)?;
            let k = cs * ct;
            for (x, cx) in left.iter() {
                for (y, cy) in right.iter() {
                    out.add_term((x.clone(), y.clone()), &k * cx * cy);
                }
            }
        }
    }
    Ok(out)
}

/// Both sides of the bialgebra relation, `(Δ(a·b), Δ(a)·Δ(b))`.
pub fn bialgebra_sides(
    product: Product,
    a: &MatrixComposition,
    b: &MatrixComposition,
) -> Result<(HTensor, HTensor)> {
    let lhs = coproduct_element(&product.mul(a, b)?);
    let rhs = tensor_product(product, &coproduct(a), &coproduct(b))?;
    Ok((lhs, rhs))
}

/// The antipode of `(H, product, Δ)`, memoized per composition.
pub struct Antipode {
    product: Product,
    memo: RefCell<FxHashMap<MatrixComposition, HElement>>,
}

impl Antipode {
    pub fn new(product: Product) -> Self {
        Self {
            product,
            memo: RefCell::default(),
        }
    }
}

impl LinearMap for Antipode {
    fn apply_basis(&self, a: &MatrixComposition) -> Result<HElement> {
        if a.is_empty() {
            return Ok(HElement::unit());
        }
        if let Some(v) = self.memo.borrow().get(a) {
            return Ok(v.clone());
        }
        let w = a.block_decompose();
        let n = w.len();
        let mut out = -HElement::basis(a.clone());
        for i in 1..n {
            let head = self.apply_basis(&w.slice(0..i).to_composition())?;
            let tail = HElement::basis(w.slice(i..n).to_composition());
            out -= &self.product.mul_elements(&head, &tail)?;
        }
        self.memo.borrow_mut().insert(a.clone(), out.clone());
        Ok(out)
    }
}

pub fn antipode(product: Product, x: &HElement) -> Result<HElement> {
    Antipode::new(product).apply(x)
}

/// `f * g = m ∘ (f ⊗ g) ∘ Δ`.
pub struct Convolution<'a> {
    product: Product,
    f: &'a dyn LinearMap,
    g: &'a dyn LinearMap,
}

pub fn convolve<'a>(product: Product, f: &'a dyn LinearMap, g: &'a dyn LinearMap) -> Convolution<'a> {
    Convolution { product, f, g }
}

impl LinearMap for Convolution<'_> {
    fn apply_basis(&self, a: &MatrixComposition) -> Result<HElement> {
        let mut out = HElement::zero();
        for ((l, r), c) in coproduct(a).iter() {
            let fl = self.f.apply_basis(l)?;
            let gr = self.g.apply_basis(r)?;
            out.add_scaled(c, &self.product.mul_elements(&fl, &gr)?);
        }
        Ok(out)
    }
}

/// `f^{*k}`; the zeroth power is `unit ∘ counit`.
pub struct ConvolutionPower<'a> {
    product: Product,
    f: &'a dyn LinearMap,
    k: usize,
}

pub fn convolution_power(product: Product, f: &dyn LinearMap, k: usize) -> ConvolutionPower<'_> {
    ConvolutionPower { product, f, k }
}

impl LinearMap for ConvolutionPower<'_> {
    fn apply_basis(&self, a: &MatrixComposition) -> Result<HElement> {
        let f = Cached::new(self.f);
        let w = a.block_decompose();
        let mut out = HElement::zero();
        for split in weak_splits(w.len(), self.k) {
            let factors = groups(&w, &split)
                .iter()
                .map(|g| f.apply_basis(g))
                .collect::<Result<Vec<_>>>()?;
            out += &self.product.mul_all(&factors)?;
        }
        Ok(out)
    }
}

/// `Σ_k p^{*k}(x) / k!` for a map with `p(ẽ) = 0`; the series stops at the
/// block count of each term.
pub fn convolution_exponential(product: Product, p: &dyn LinearMap, x: &HElement) -> Result<HElement> {
    if !p.apply_basis(&MatrixComposition::empty())?.is_zero() {
        return Err(Error::NotNilpotent);
    }
    let p = Cached::new(p);
    x.map_linear(|a| {
        let w = a.block_decompose();
        let mut out = HElement::zero();
        let mut factorial = BigInt::one();
        for k in 0..=w.len() {
            if k > 0 {
                factorial *= k;
            }
            let mut level = HElement::zero();
            for split in nonempty_splits(w.len(), k) {
                let factors = groups(&w, &split)
                    .iter()
                    .map(|g| p.apply_basis(g))
                    .collect::<Result<Vec<_>>>()?;
                level += &product.mul_all(&factors)?;
            }
            out.add_scaled(&Rational::new(BigInt::one(), factorial.clone()), &level);
        }
        Ok(out)
    })
}

/// `Σ_{k ≥ 1} (−1)^{k−1}/k · (id − unit∘counit)^{*k}`.
pub struct Eulerian {
    product: Product,
}

impl Eulerian {
    pub fn new(product: Product) -> Self {
        Self { product }
    }
}

impl LinearMap for Eulerian {
    fn apply_basis(&self, a: &MatrixComposition) -> Result<HElement> {
        let w = a.block_decompose();
        let mut out = HElement::zero();
        for k in 1..=w.len() {
            let mut level = HElement::zero();
            for split in nonempty_splits(w.len(), k) {
                let factors: Vec<HElement> = groups(&w, &split).into_iter().map(HElement::basis).collect();
                level += &self.product.mul_all(&factors)?;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            out.add_scaled(&Rational::new(BigInt::from(sign), BigInt::from(k)), &level);
        }
        Ok(out)
    }
}

pub fn eulerian_idempotent(product: Product, x: &HElement) -> Result<HElement> {
    Eulerian::new(product).apply(x)
}

/// Total monomial degree, if all terms share one.
pub fn homogeneous_degree(x: &HElement) -> Option<usize> {
    let mut degrees = x.iter().map(|(a, _)| a.degree());
    let first = degrees.next()?;
    degrees.all(|d| d == first).then_some(first)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::q;
    use crate::monoid::Alphabet;
    use crate::text::{parse_composition, parse_element};

    fn ab() -> Alphabet {
        Alphabet::new(4).unwrap()
    }

    fn c(s: &str) -> MatrixComposition {
        parse_composition(s, ab()).unwrap()
    }

    fn el(s: &str) -> HElement {
        parse_element(s, ab()).unwrap()
    }

    fn pair(a: &str, b: &str) -> (MatrixComposition, MatrixComposition) {
        (c(a), c(b))
    }

    #[test]
    fn coproduct_examples() {
        let d = coproduct(&c("[1 e; e 2]"));
        let expected: HTensor = [
            pair("[1 e; e 2]", "[]"),
            pair("[1]", "[2]"),
            pair("[]", "[1 e; e 2]"),
        ]
        .into_iter()
        .map(|k| (Rational::one(), k))
        .collect();
        assert_eq!(d, expected);
        assert_eq!(coproduct(&MatrixComposition::empty()), HTensor::basis(pair("[]", "[]")));
        assert_eq!(coproduct(&c("[e 1; 2 e]")).len(), 2);
        assert_eq!(d.to_string(), "[1 e; e 2] (x) [] + [1] (x) [2] + [] (x) [1 e; e 2]");
    }

    #[test]
    fn counit_and_reduced() {
        assert_eq!(counit(&el("[] + 2*[1]")), Rational::one());
        assert!(reduced_coproduct(&el("[1]")).is_zero());
        let t = iterated_reduced_coproduct(2, &el("[1 e e; e 2 e; e e 3]"));
        assert_eq!(t, MultiTensor::basis(vec![c("[1]"), c("[2]"), c("[3]")]));
        assert_eq!(iterated_reduced_coproduct(0, &el("[] + [1]")), MultiTensor::basis(vec![c("[1]")]));
    }

    #[test]
    fn iterated_coproduct_counts() {
        // Weak splits of a 2-block word into 3 groups: C(4, 2) = 6.
        assert_eq!(iterated_coproduct(2, &el("[1 e; e 2]")).len(), 6);
        assert_eq!(
            coproduct_left(&coproduct(&c("[1 e e; e 2 e; e e 3]"))),
            coproduct_right(&coproduct(&c("[1 e e; e 2 e; e e 3]")))
        );
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(Product::BlockShuffle, &el("[1]")).unwrap(), el("-[1]"));
        assert_eq!(antipode(Product::BlockShuffle, &el("[1 e; e 2]")).unwrap(), el("[2 e; e 1]"));
        for p in Product::ALL {
            let s = Antipode::new(p);
            let x = el("[1 e e; e 2 3; e e 1] + 1/3*[2;3]");
            let lhs = convolve(p, &s, &Identity).apply(&x).unwrap();
            assert_eq!(lhs, UnitCounit.apply(&x).unwrap(), "{p}");
            let rhs = convolve(p, &Identity, &s).apply(&x).unwrap();
            assert_eq!(rhs, UnitCounit.apply(&x).unwrap(), "{p}");
        }
    }

    #[test]
    fn convolution_unit_and_nilpotence() {
        let x = el("[1 e; e 2] + [2 e e; e 1 3]");
        let f = |a: &MatrixComposition| Ok(HElement::term(q(a.rows() as i64, 1), a.clone()));
        for p in Product::ALL {
            assert_eq!(convolve(p, &f, &UnitCounit).apply(&x).unwrap(), f.apply(&x).unwrap());
            assert_eq!(convolve(p, &UnitCounit, &f).apply(&x).unwrap(), f.apply(&x).unwrap());
            assert!(convolution_power(p, &AugmentationProjection, 3).apply(&x).unwrap().is_zero());
            assert!(!convolution_power(p, &AugmentationProjection, 2).apply(&x).unwrap().is_zero());
            assert_eq!(convolution_power(p, &f, 0).apply(&el("[] + [1]")).unwrap(), HElement::unit());
        }
    }

    #[test]
    fn eulerian_examples() {
        assert_eq!(
            eulerian_idempotent(Product::Shuffle2, &el("[1 e; e 2]")).unwrap(),
            el("1/2*[1 e; e 2] - 1/2*[2 e; e 1] - 1/2*[e 1; 2 e] - 1/2*[e 2; 1 e]")
        );
        assert_eq!(eulerian_idempotent(Product::QuasiShuffle, &el("[1]")).unwrap(), el("[1]"));
        for p in Product::ALL {
            let prod = p.mul(&c("[1]"), &c("[2 3]")).unwrap();
            assert!(eulerian_idempotent(p, &prod).unwrap().is_zero(), "{p}");
        }
    }

    #[test]
    fn exponential_of_eulerian_is_identity() {
        let x = el("[1 e e; e 2 e; e e 3] - 2*[e 1; 2 e]");
        for p in Product::ALL {
            let e = Eulerian::new(p);
            assert_eq!(convolution_exponential(p, &e, &x).unwrap(), x);
        }
        let zero = |_: &MatrixComposition| Ok(HElement::zero());
        assert_eq!(
            convolution_exponential(Product::Shuffle2, &zero, &HElement::unit()).unwrap(),
            HElement::unit()
        );
        assert_eq!(
            convolution_exponential(Product::Shuffle2, &Identity, &HElement::unit()),
            Err(Error::NotNilpotent)
        );
    }

    #[test]
    fn bialgebra_relation_small() {
        for p in Product::ALL {
            let (l, r) = bialgebra_sides(p, &c("[1 e; e 2]"), &c("[3]")).unwrap();
            assert_eq!(l, r, "{p}");
        }
    }
}
