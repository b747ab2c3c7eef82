mod common;

use common::*;
use matcomp::coalgebra::{coproduct_element, tensor_map, Cached, LinearMap};
use matcomp::cofree::*;
use matcomp::{Alphabet, Error, HElement, MatrixComposition, Product, Rational, Result};
use proptest::prelude::*;

/// A connected-valued map: `a ↦ (blocks a)·[1^deg a] + a` on connected `a`,
/// and `(blocks a)·[1^deg a]` otherwise.
fn psi(a: &MatrixComposition) -> Result<HElement> {
    let ab = Alphabet::new(D).unwrap();
    let power = ab.monomial(&[a.degree() as u16, 0, 0])?;
    let mut out = HElement::term(Rational::from_integer(a.block_count().into()), MatrixComposition::singleton(power)?);
    if a.is_connected() {
        out.add_term(a.clone(), Rational::from_integer(1.into()));
    }
    Ok(out)
}

fn is_coalgebra_map(f: &dyn LinearMap, x: &HElement) -> bool {
    let left = coproduct_element(&f.apply(x).unwrap());
    let right = tensor_map(f, f, &coproduct_element(x)).unwrap();
    left == right
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cofree_extension_is_a_coalgebra_map(x in element(3, blocky(4))) {
        let ext = CofreeExtension::new(&psi);
        prop_assert!(is_coalgebra_map(&ext, &x));
    }

    #[test]
    fn cofree_extension_projects_to_psi(a in blocky(4)) {
        let ext = CofreeExtension::new(&psi);
        prop_assert_eq!(pi_connected(&ext.apply_basis(&a).unwrap()), psi(&a).unwrap());
    }

    #[test]
    fn contraction_kills_products(a in composition(2, 2), b in composition(2, 2)) {
        for p in Product::ALL {
            let ab = p.mul(&a, &b).unwrap();
            prop_assert!(Contraction::new(p).apply(&ab).unwrap().is_zero(), "{}", p);
        }
    }

    #[test]
    fn log_fixes_connected(a in composition(3, 3)) {
        prop_assume!(a.is_connected());
        for p in Product::ALL {
            prop_assert_eq!(log_map(p, &HElement::basis(a.clone())).unwrap(), HElement::basis(a.clone()));
        }
    }

    #[test]
    fn log_and_exp_are_inverse(x in element(2, bounded(4, 4, 4))) {
        for p in [Product::Shuffle2, Product::QuasiShuffle] {
            let y = log_map(p, &x).unwrap();
            prop_assert_eq!(exp_map(p, &y).unwrap(), x.clone(), "{}", p);
            prop_assert_eq!(log_map(p, &exp_map(p, &x).unwrap()).unwrap(), x.clone(), "{}", p);
        }
    }

    #[test]
    fn log_is_a_bialgebra_map(a in bounded(2, 3, 3), b in composition(2, 2)) {
        for p in [Product::Shuffle2, Product::QuasiShuffle] {
            let log = |c: &MatrixComposition| log_map(p, &HElement::basis(c.clone()));
            let log = Cached::new(&log);
            let left = log.apply(&p.mul(&a, &b).unwrap()).unwrap();
            let right = Product::BlockShuffle
                .mul_elements(&log.apply_basis(&a).unwrap(), &log.apply_basis(&b).unwrap())
                .unwrap();
            prop_assert_eq!(left, right, "{}", p);
            prop_assert!(is_coalgebra_map(&log, &HElement::basis(a.clone())), "{}", p);
        }
    }

    #[test]
    fn bialgebra_chain_is_constant(a in bounded(2, 3, 3), b in composition(2, 2)) {
        for p in Product::ALL {
            let chain = bialgebra_chain(p, &a, &b).unwrap();
            prop_assert_eq!(chain.len(), 6);
            for stage in &chain[1..] {
                prop_assert_eq!(stage, &chain[0], "{}", p);
            }
        }
    }

    #[test]
    fn hopf_transport_round_trips(x in element(2, bounded(3, 4, 4))) {
        let there = hopf_transport(Product::Shuffle2, Product::QuasiShuffle, &x).unwrap();
        prop_assert_eq!(hopf_transport(Product::QuasiShuffle, Product::Shuffle2, &there).unwrap(), x);
    }
}

#[test]
fn perturbed_extension_is_not_a_coalgebra_map() {
    // Same connected part as the cofree extension, different two-block part.
    let a = el("[1 e; e 2]");
    let bump = c("[2 e; e 1]");
    let ext = CofreeExtension::new(&psi4);
    let perturbed = |b: &MatrixComposition| -> Result<HElement> {
        let mut v = ext.apply_basis(b)?;
        if b.block_count() == 2 {
            v.add_term(bump.clone(), Rational::from_integer(1.into()));
        }
        Ok(v)
    };
    assert_eq!(pi_connected(&perturbed(&c("[1 e; e 2]")).unwrap()), pi_connected(&ext.apply(&a).unwrap()));
    assert!(!is_coalgebra_map(&perturbed, &a));
    assert!(is_coalgebra_map(&ext, &a));
}

fn psi4(a: &MatrixComposition) -> Result<HElement> {
    Ok(if a.is_connected() { HElement::basis(a.clone()) } else { HElement::zero() })
}

#[test]
fn disconnected_values_are_rejected() {
    let bad = |a: &MatrixComposition| -> Result<HElement> { Ok(HElement::basis(a.diag_concat(a))) };
    assert!(matches!(cofree_extend(&bad, &el("[1]")), Err(Error::DisconnectedOutput(_))));
}

#[test]
fn log_of_two_blocks() {
    let x = el("[1 e; e 2]");
    assert_eq!(
        log_map(Product::Shuffle2, &x).unwrap(),
        el("[1 e; e 2] - 1/2*[e 1; 2 e] - 1/2*[e 2; 1 e]")
    );
    assert_eq!(log_map(Product::BlockShuffle, &x).unwrap(), x);
}
