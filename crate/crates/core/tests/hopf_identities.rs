use num_bigint::BigInt;
use vw_core::hopf::{coproduct_lin, shuffle_product, star, z, zhat, Algebra};
use vw_core::relations::quantum_binomial;
use vw_core::{ComplexVariant, Diagram, LinComb, Parity};

fn sgn(s: i32) -> BigInt {
    BigInt::from(s)
}

#[test]
fn z_is_a_horizontal_cycle() {
    for parity in Parity::BOTH {
        let mut alg = Algebra::new(parity);
        for k in 1..=5 {
            assert!(alg.d_h(&z(k, parity)).unwrap().is_zero(), "k={k} {parity}");
        }
    }
}

#[test]
fn boundary_of_z() {
    for parity in Parity::BOTH {
        let mut alg = Algebra::new(parity);
        for k in 1..=5 {
            let lhs = alg.d(&z(k, parity)).unwrap();
            let rhs = alg.vdash(&z(k - 1, parity), &star()).unwrap();
            let s = parity.sign().pow(k as u32);
            assert_eq!(lhs, rhs.scaled(&sgn(s)), "k={k} {parity}");
        }
    }
}

#[test]
fn boundary_of_zhat() {
    for parity in Parity::BOTH {
        let mut alg = Algebra::new(parity);
        for k in 1..=5 {
            let lhs = alg.d(&zhat(k, parity)).unwrap();
            let rhs = alg.vdash(&star(), &zhat(k - 1, parity)).unwrap();
            assert_eq!(lhs, rhs.scaled(&sgn(-parity.sign())), "k={k} {parity}");
        }
    }
}

#[test]
fn gluing_z_families_gives_quantum_binomials() {
    for parity in Parity::BOTH {
        let mut alg = Algebra::new(parity);
        for a in 1..=5 {
            for b in 1..=6 - a {
                let c = quantum_binomial(a, b, parity.sign());
                let zz = alg.vdash(&z(a, parity), &z(b, parity)).unwrap();
                assert_eq!(zz, z(a + b, parity).scaled(&c), "Z {a},{b} {parity}");
                let hh = alg.vdash(&zhat(a, parity), &zhat(b, parity)).unwrap();
                assert_eq!(hh, zhat(a + b, parity).scaled(&c), "Zhat {a},{b} {parity}");
            }
        }
    }
}

#[test]
fn star_glued_to_itself_vanishes() {
    for parity in Parity::BOTH {
        assert!(Algebra::new(parity).vdash(&star(), &star()).unwrap().is_zero());
    }
}

#[test]
fn iso_is_a_chain_map_with_inverse() {
    for parity in Parity::BOTH {
        let mut alg = Algebra::new(parity);
        for i in 0..=3 {
            for j in 0..=2 * i {
                let slice = alg.builder().slice(ComplexVariant::TssH, i, j).unwrap();
                for x in slice.elements() {
                    let ix = alg.iso_i(&x).unwrap();
                    let dix = alg.d(&ix).unwrap();
                    let dx = alg.d_h(&x).unwrap();
                    let idx = alg.iso_i(&dx).unwrap();
                    assert_eq!(dix, idx, "chain map at {i},{j} {parity}: {x:?}");
                    let back = alg.iso_i_inv(&ix).unwrap();
                    assert_eq!(back, x, "inverse at {i},{j} {parity}");
                }
            }
        }
    }
}

#[test]
fn coproduct_of_a_product() {
    for parity in Parity::BOTH {
        let a = LinComb::from_diagram(Diagram::new(2, &[(0, 1)], &[0], &[0, 1]));
        let b = LinComb::from_diagram(Diagram::new(1, &[], &[], &[2]));
        let lhs = coproduct_lin(&shuffle_product(&a, &b, parity), parity);
        let rhs = coproduct_lin(&a, parity).product(&coproduct_lin(&b, parity), parity);
        assert_eq!(lhs, rhs, "{parity}");
    }
}
