use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use vw_core::complex::spanning_diagrams;
use vw_core::relations::{arnold_reduce, arnold_reduce_random, quantum_binomial, span_rank_oracle};
use vw_core::{ComplexBuilder, ComplexVariant, Diagram, LinComb, Parity, Ring};

/// A chord forest on `n` points from a list of candidate edges, keeping
/// those that join two components.
fn forest(n: usize, edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut comp: Vec<usize> = (0..n).collect();
    fn root(c: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while c[x] != x {
            x = c[x];
        }
        x
    }
    let mut out = Vec::new();
    for &(a, b) in edges {
        let (a, b) = (a % n, b % n);
        if a == b {
            continue;
        }
        let (ra, rb) = (root(&mut comp, a), root(&mut comp, b));
        if ra != rb {
            comp[ra] = rb;
            out.push((a.min(b), a.max(b)));
        }
    }
    out.sort_unstable();
    out
}

fn parity() -> impl Strategy<Value = Parity> {
    prop_oneof![Just(Parity::Odd), Just(Parity::Even)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn normal_forms_do_not_depend_on_the_schedule(
        n in 2usize..8,
        edges in prop::collection::vec((0usize..8, 0usize..8), 1..8),
        bottom in prop::collection::vec(any::<bool>(), 8),
        top in prop::collection::vec(0usize..2, 8),
        parity in parity(),
        seed in any::<u64>(),
    ) {
        let chords = forest(n, &edges);
        let b: Vec<usize> = (0..n).filter(|&x| bottom[x]).collect();
        let d = Diagram::new(n, &chords, &b, &top[..n]);
        let x = LinComb::from_diagram(d);
        let canonical = arnold_reduce(&x, parity).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let random = arnold_reduce_random(&x, parity, &mut rng).unwrap();
        prop_assert_eq!(&canonical, &random);
        prop_assert!(canonical.diagrams().all(Diagram::is_admissible));
    }

    #[test]
    fn quantum_binomial_is_symmetric(k in 0usize..12, n in 0usize..12) {
        for q in [1, -1] {
            prop_assert_eq!(quantum_binomial(k, n, q), quantum_binomial(n, k, q));
        }
    }
}

#[test]
fn basis_dimensions_equal_the_span_oracle() {
    for parity in Parity::BOTH {
        let mut b = ComplexBuilder::new(parity);
        for v in ComplexVariant::ALL {
            for i in 0..=3 {
                for j in 0..=2 * i {
                    let s = b.slice(v, i, j).unwrap();
                    let all = spanning_diagrams(v, i, j, 1_000_000).unwrap();
                    let r = span_rank_oracle(&all, parity, Ring::Rationals).unwrap();
                    assert_eq!(r, s.dim(), "{v} {parity} ({i},{j})");
                }
            }
        }
    }
}
