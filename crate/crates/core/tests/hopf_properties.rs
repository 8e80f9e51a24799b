use std::sync::OnceLock;

use num_bigint::BigInt;
use proptest::prelude::*;
use vw_core::hopf::Algebra;
use vw_core::verify::{axioms, small_elements};
use vw_core::{LinComb, Parity};

/// Basis elements of `Tss` with at most three distinct points, per parity.
fn pool(parity: Parity) -> &'static [LinComb] {
    static ODD: OnceLock<Vec<LinComb>> = OnceLock::new();
    static EVEN: OnceLock<Vec<LinComb>> = OnceLock::new();
    let cell = match parity {
        Parity::Odd => &ODD,
        Parity::Even => &EVEN,
    };
    cell.get_or_init(|| small_elements(&mut Algebra::new(parity), 3).unwrap())
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Odd), Just(Parity::Even)]
}

/// A nonempty combination of pool elements of one bigrading.
fn element(parity: Parity, picks: &[(usize, i8)]) -> Option<LinComb> {
    let p = pool(parity);
    let lead = &p[picks[0].0 % p.len()];
    let b = lead.diagrams().next()?.bigrading();
    let mut x = LinComb::zero();
    for &(k, c) in picks {
        let e = &p[k % p.len()];
        if e.diagrams().next().map(|d| d.bigrading()) == Some(b) && c != 0 {
            x.add_scaled(e, &BigInt::from(c));
        }
    }
    (!x.is_zero() && x.diagrams().all(|d| d.n() > 0)).then_some(x)
}

fn picks() -> impl Strategy<Value = Vec<(usize, i8)>> {
    prop::collection::vec((0usize..1000, -2i8..=2), 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn product_and_coproduct(parity in parity(), a in picks(), b in picks()) {
        let (Some(x), Some(y)) = (element(parity, &a), element(parity, &b)) else { return Ok(()) };
        let mut alg = Algebra::new(parity);
        prop_assert!(axioms::commutativity(&mut alg, &x, &y).unwrap());
        prop_assert!(axioms::bialgebra(&mut alg, &x, &y).unwrap());
        prop_assert!(axioms::coassociativity(&alg, &x));
        prop_assert!(axioms::counit(&alg, &x));
        prop_assert!(axioms::derivation(&mut alg, &x, &y, false).unwrap());
        prop_assert!(axioms::coderivation(&mut alg, &x, true).unwrap());
    }

    #[test]
    fn gluing_and_divided_products(parity in parity(), a in picks(), b in picks(), c in picks()) {
        let (Some(x), Some(y), Some(z)) = (element(parity, &a), element(parity, &b), element(parity, &c)) else {
            return Ok(());
        };
        let mut alg = Algebra::new(parity);
        prop_assert!(axioms::divided_splits_product(&mut alg, &x, &y).unwrap());
        prop_assert!(axioms::vdash_commutativity(&mut alg, &x, &y).unwrap());
        prop_assert!(axioms::leibniz(&mut alg, &[x.clone(), y.clone()], false).unwrap());
        prop_assert!(axioms::leibniz(&mut alg, &[x.clone(), y.clone()], true).unwrap());
        if x.diagrams().chain(y.diagrams()).chain(z.diagrams()).all(|d| d.n() <= 2) {
            prop_assert!(axioms::vdash_associativity(&mut alg, &x, &y, &z).unwrap());
            prop_assert!(axioms::leibniz(&mut alg, &[x, y, z], false).unwrap());
        }
    }

    #[test]
    fn divided_powers(parity in parity(), a in picks(), b in picks()) {
        let (Some(x), Some(y)) = (element(parity, &a), element(parity, &b)) else { return Ok(()) };
        if x.degree_is_odd(parity).unwrap() != Some(false) {
            return Ok(());
        }
        let mut alg = Algebra::new(parity);
        prop_assert!(axioms::self_vdash_vanishes(&mut alg, &x).unwrap());
        prop_assert!(axioms::divided_power_normalization(&mut alg, &x, 2).unwrap());
        prop_assert!(axioms::divided_power_boundary(&mut alg, &x, 2, false).unwrap());
        prop_assert!(axioms::divided_power_product(&mut alg, &x, 1, 1).unwrap());
        prop_assert!(axioms::iso_respects_divided_powers(&mut alg, &x, 2).unwrap());
        if y.degree_is_odd(parity).unwrap() == Some(false) {
            prop_assert!(axioms::divided_power_of_sum(&mut alg, &x, &y, 2).unwrap());
        }
    }

    #[test]
    fn iso_respects_the_structure(parity in parity(), a in picks(), b in picks()) {
        let (Some(x), Some(y)) = (element(parity, &a), element(parity, &b)) else { return Ok(()) };
        let mut alg = Algebra::new(parity);
        prop_assert!(axioms::iso_comultiplicative(&mut alg, &x).unwrap());
        prop_assert!(axioms::iso_chain_map_with_inverse(&mut alg, &x).unwrap());
        if x.diagrams().chain(y.diagrams()).all(|d| d.n() <= 2) {
            prop_assert!(axioms::iso_multiplicative(&mut alg, &x, &y).unwrap());
            prop_assert!(axioms::iso_respects_vdash(&mut alg, &x, &y).unwrap());
        }
    }
}
