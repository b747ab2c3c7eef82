//! Cofree-coalgebra tools: projections onto block counts, the cofree
//! extension of connected-valued maps, and the Log/Exp isomorphisms between
//! the two-parameter products and the block shuffle.

use crate::algebra::{HElement, HTensor, Rational};
use crate::coalgebra::{
    coproduct_element, nonempty_splits, tensor_map, tensor_product, Cached, Eulerian, LinearMap,
};
use crate::composition::MatrixComposition;
use crate::error::{Error, Result};
use crate::products::Product;

/// `π`: keeps the connected terms.
pub fn pi_connected(x: &HElement) -> HElement {
    pi_blockcount(1, x)
}

/// `π_k`: keeps the terms with exactly `k` blocks.
pub fn pi_blockcount(k: usize, x: &HElement) -> HElement {
    x.filter(|a| a.block_count() == k)
}

/// The coalgebra morphism `Ψ = Σ_n diag ∘ ψ^{⊗n} ∘ Δ̃^{(n−1)}` with `π ∘ Ψ = ψ`.
pub struct CofreeExtension<'a> {
    psi: Cached<'a>,
}

impl<'a> CofreeExtension<'a> {
    pub fn new(psi: &'a dyn LinearMap) -> Self {
        Self { psi: Cached::new(psi) }
    }

    fn psi_checked(&self, a: &MatrixComposition) -> Result<HElement> {
        let v = self.psi.apply_basis(a)?;
        if let Some((bad, _)) = v.iter().find(|(c, _)| !c.is_connected()) {
            return Err(Error::DisconnectedOutput(format!("psi({a}) contains {bad}")));
        }
        Ok(v)
    }
}

impl LinearMap for CofreeExtension<'_> {
    fn apply_basis(&self, a: &MatrixComposition) -> Result<HElement> {
        if a.is_empty() {
            return Ok(HElement::unit());
        }
        let w = a.block_decompose();
        let mut out = HElement::zero();
        for n in 1..=w.len() {
            for split in nonempty_splits(w.len(), n) {
                // Multilinear diag of the ψ-images of the groups.
                let mut acc: Vec<(Rational, MatrixComposition)> =
                    vec![(Rational::from_integer(1.into()), MatrixComposition::empty())];
                for r in split {
                    let img = self.psi_checked(&w.slice(r).to_composition())?;
                    if img.is_zero() {
                        acc.clear();
                        break;
                    }
                    acc = acc
                        .iter()
                        .flat_map(|(c, m)| img.iter().map(move |(b, cb)| (c * cb, m.diag_concat(b))))
                        .collect();
                }
                for (c, m) in acc {
                    out.add_term(m, c);
                }
            }
        }
        Ok(out)
    }
}

pub fn cofree_extend(psi: &dyn LinearMap, x: &HElement) -> Result<HElement> {
    CofreeExtension::new(psi).apply(x)
}

/// `π ∘ 𝔢_m`.
pub struct Contraction {
    eulerian: Eulerian,
}

impl Contraction {
    pub fn new(product: Product) -> Self {
        Self {
            eulerian: Eulerian::new(product),
        }
    }
}

impl LinearMap for Contraction {
    fn apply_basis(&self, a: &MatrixComposition) -> Result<HElement> {
        if a.is_connected() {
            // Only the k = 1 term of 𝔢 survives π on a single block.
            return Ok(HElement::basis(a.clone()));
        }
        Ok(pi_connected(&self.eulerian.apply_basis(a)?))
    }
}

/// `Log_m`: the bialgebra isomorphism `(H, m) → (H, bsh)` induced by `π ∘ 𝔢_m`.
pub struct LogMap {
    contraction: Contraction,
}

impl LogMap {
    pub fn new(product: Product) -> Self {
        Self {
            contraction: Contraction::new(product),
        }
    }

    pub fn apply(&self, x: &HElement) -> Result<HElement> {
        CofreeExtension::new(&self.contraction).apply(x)
    }
}

pub fn log_map(product: Product, x: &HElement) -> Result<HElement> {
    LogMap::new(product).apply(x)
}

/// `Exp_m`, the inverse of `Log_m`, by fixed-point iteration
/// `r ← −(Log − id)(r)`: `Log − id` strictly lowers the block count.
pub fn exp_map(product: Product, y: &HElement) -> Result<HElement> {
    let contraction = Contraction::new(product);
    let log = CofreeExtension::new(&contraction);
    let mut result = HElement::zero();
    let mut r = y.clone();
    let mut bound = r.max_block_count();
    while !r.is_zero() {
        result += &r;
        let mut next = log.apply(&r)?;
        next -= &r;
        r = -next;
        let blocks = r.max_block_count();
        assert!(r.is_zero() || blocks < bound, "Log − id must lower the block count");
        bound = blocks;
    }
    Ok(result)
}

/// Hopf isomorphism `(H, src, Δ) → (H, dst, Δ)` through the block shuffle.
pub fn hopf_transport(src: Product, dst: Product, x: &HElement) -> Result<HElement> {
    use Product::BlockShuffle as Bsh;
    match (src, dst) {
        _ if src == dst => Ok(x.clone()),
        (_, Bsh) => log_map(src, x),
        (Bsh, _) => exp_map(dst, x),
        _ => exp_map(dst, &log_map(src, x)?),
    }
}

/// Values along the chain of equalities deriving the bialgebra relation of
/// `(H, m)` from that of the block shuffle through `Ψ = Exp_m`. Every
/// entry equals `Δ(a m b)`; the last one is `Δ(a) m Δ(b)`.
pub fn bialgebra_chain(product: Product, a: &MatrixComposition, b: &MatrixComposition) -> Result<Vec<HTensor>> {
    let psi = |c: &MatrixComposition| exp_map(product, &HElement::basis(c.clone()));
    let psi = Cached::new(&psi);
    let a = HElement::basis(a.clone());
    let b = HElement::basis(b.clone());
    let x = log_map(product, &a)?;
    let y = log_map(product, &b)?;
    let xy = Product::BlockShuffle.mul_elements(&x, &y)?;
    let dx = coproduct_element(&x);
    let dy = coproduct_element(&y);
    Ok(vec![
        coproduct_element(&product.mul_elements(&a, &b)?),
        coproduct_element(&psi.apply(&xy)?),
        tensor_map(&psi, &psi, &coproduct_element(&xy))?,
        tensor_map(&psi, &psi, &tensor_product(Product::BlockShuffle, &dx, &dy)?)?,
        tensor_product(product, &tensor_map(&psi, &psi, &dx)?, &tensor_map(&psi, &psi, &dy)?)?,
        tensor_product(product, &coproduct_element(&a), &coproduct_element(&b))?,
    ])
}
