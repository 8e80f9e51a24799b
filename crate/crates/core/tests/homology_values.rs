use vw_core::homology::{chord_space_dims, kunneth_compare, ChordRelations, HomologyEngine, HomologyGroup, HomologyValue, NamedMap};
use vw_core::{ComplexVariant, Parity, Ring};

fn group(v: HomologyValue) -> HomologyGroup {
    v.group().expect("integer coefficients").clone()
}

#[test]
fn upper_diagonal_of_t0_vanishes() {
    let mut e = HomologyEngine::default();
    for parity in Parity::BOTH {
        for i in 2..=5 {
            let h = e.homology_group(ComplexVariant::T0, parity, i, i + 1, Ring::Integers).unwrap();
            assert!(h.is_zero(), "{parity} {i}: {h}");
        }
    }
}

#[test]
fn upper_diagonal_of_t_with_zhat_generating() {
    let expected = [
        (Parity::Even, [HomologyGroup::free(1), HomologyGroup::cyclic(2), HomologyGroup::cyclic(3), HomologyGroup::cyclic(2), HomologyGroup::cyclic(5)]),
        (Parity::Odd, [HomologyGroup::free(1), HomologyGroup::free(1), HomologyGroup::zero(), HomologyGroup::cyclic(2), HomologyGroup::zero()]),
    ];
    let mut e = HomologyEngine::default();
    for (parity, groups) in expected {
        for (k, want) in groups.iter().enumerate() {
            let i = k + 1;
            let got = group(e.homology_group(ComplexVariant::T, parity, i, i + 1, Ring::Integers).unwrap());
            assert_eq!(&got, want, "{parity} ({i},{})", i + 1);
            let status = e.zhat_status(ComplexVariant::T, parity, i, Ring::Integers).unwrap().expect("Ẑ is a cycle");
            assert_eq!(status.nonzero, !want.is_zero(), "{parity} {i}");
            assert_eq!(status.generates, Some(true), "{parity} {i}");
        }
    }
}

#[test]
fn universal_coefficients_between_z_and_prime_fields() {
    let mut e = HomologyEngine::default();
    for parity in Parity::BOTH {
        for v in [ComplexVariant::T, ComplexVariant::Ts, ComplexVariant::T0, ComplexVariant::Z, ComplexVariant::Tss] {
            for i in 1..=3 {
                for j in 0..=2 * i {
                    let h = group(e.homology_group(v, parity, i, j, Ring::Integers).unwrap());
                    for p in [2u64, 3, 5] {
                        let field = Ring::prime_field(p).unwrap();
                        // H(C; F_p) = H ⊗ F_p ⊕ Tor(H_{j-1}, F_p)
                        let below = if j == 0 {
                            HomologyGroup::zero()
                        } else {
                            group(e.homology_group(v, parity, i, j - 1, Ring::Integers).unwrap())
                        };
                        let divisible = |g: &HomologyGroup| g.torsion.iter().filter(|t| *t % p == 0.into()).count();
                        let want = h.free_rank + divisible(&h) + divisible(&below);
                        let got = e.homology_group(v, parity, i, j, field).unwrap().rank();
                        assert_eq!(got, want, "{v} {parity} ({i},{j}) F{p}");
                    }
                    let q = e.homology_group(v, parity, i, j, Ring::Rationals).unwrap().rank();
                    assert_eq!(q, h.free_rank, "{v} {parity} ({i},{j}) Q");
                }
            }
        }
    }
}

#[test]
fn dual_homology_on_the_lower_diagonal() {
    let mut e = HomologyEngine::default();
    let theta = e.dual_homology_group(ComplexVariant::T, Parity::Odd, 1, 2, Ring::Integers).unwrap();
    assert_eq!(theta.rank(), 1);
    assert!(e.dual_homology_group(ComplexVariant::Ts, Parity::Odd, 1, 2, Ring::Integers).unwrap().is_zero());
    let oracle = chord_space_dims(5, ChordRelations::FourTerm, Ring::Rationals).unwrap();
    for (i, want) in oracle.iter().enumerate() {
        let got = e.dual_homology_group(ComplexVariant::T, Parity::Odd, i, 2 * i, Ring::Rationals).unwrap().rank();
        assert_eq!(got, *want, "B_{i}");
    }
}

#[test]
fn chord_space_small_orders() {
    assert_eq!(chord_space_dims(1, ChordRelations::FourTerm, Ring::Rationals).unwrap(), [1, 1]);
    assert_eq!(chord_space_dims(1, ChordRelations::FourTermOneTerm, Ring::Rationals).unwrap(), [1, 0]);
    assert_eq!(vw_core::homology::chord_space::chord_diagrams(4).len(), 105);
}

#[test]
fn named_maps_are_quasi_isomorphisms() {
    let mut e = HomologyEngine::default();
    for parity in Parity::BOTH {
        for map in NamedMap::ALL {
            for i in 0..=3 {
                assert!(e.is_quasi_isomorphism(map, parity, i, Ring::Integers).unwrap(), "{map} {parity} i={i}");
            }
        }
    }
}

#[test]
fn kunneth_over_integers_and_small_fields() {
    let mut e = HomologyEngine::default();
    for parity in Parity::BOTH {
        for ring in [Ring::Integers, Ring::PrimeField(2), Ring::PrimeField(3)] {
            let r = kunneth_compare(&mut e, parity, 3, ring).unwrap();
            assert!(r.all_match(), "{parity} {ring}: {:?}", r.rows.iter().find(|x| !x.matches));
        }
    }
}

#[test]
fn coproduct_is_cocommutative_on_homology() {
    let mut e = HomologyEngine::default();
    for v in [ComplexVariant::T, ComplexVariant::Ts] {
        for ring in [Ring::PrimeField(2), Ring::PrimeField(3)] {
            for i in 1..=3 {
                for c in e.cocommutativity(v, Parity::Odd, i, ring).unwrap() {
                    assert!(c.holds, "{v} {ring} ({},{})", c.i, c.j);
                }
            }
        }
    }
}

#[test]
fn divided_squares_of_boundaries_are_boundaries() {
    let mut e = HomologyEngine::default();
    for parity in Parity::BOTH {
        for v in [ComplexVariant::T, ComplexVariant::Ts, ComplexVariant::Tss] {
            for i in 1..=2 {
                for c in e.divided_square_of_boundaries(v, parity, i).unwrap() {
                    assert!(c.holds, "{v} {parity} ({},{})", c.i, c.j);
                }
            }
        }
    }
}
