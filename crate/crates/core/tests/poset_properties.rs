//! Property tests for the order substrate: closure operators, bounds,
//! directed subsets, structure flags and prime/co-prime duality, driven by
//! randomly generated posets.

use proptest::prelude::*;

use domcheck_core::poset::{Direction, FinitePoset, Subset};

fn poset_strategy(max_n: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(proptest::bool::weighted(0.35), n * n).prop_map(move |bits| {
            let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
            let mut covers = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    if bits[i * n + j] {
                        covers.push((format!("e{i}"), format!("e{j}")));
                    }
                }
            }
            FinitePoset::from_covers_owned(names, &covers).expect("acyclic covers")
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn closures_are_closure_operators(p in poset_strategy(7), seed in any::<u32>()) {
        let n = p.len();
        let s = Subset::from_bits(n, seed & (if n == 32 { u32::MAX } else { (1 << n) - 1 }));
        for direction in [Direction::Up, Direction::Down] {
            let once = p.closure(&s, direction).unwrap();
            // extensive
            prop_assert!(s.is_subset_of(&once));
            // idempotent
            prop_assert_eq!(p.closure(&once, direction).unwrap(), once);
            // monotone: closure of a subset is a subset of the closure
            let smaller = s.intersection(&Subset::from_bits(n, seed.rotate_left(7) & ((1 << n) - 1)));
            prop_assert!(p.closure(&smaller, direction).unwrap().is_subset_of(&once));
        }
    }

    #[test]
    fn directed_subsets_have_greatest_elements(p in poset_strategy(6)) {
        for d in p.directed_subsets(0) {
            prop_assert!(d.set.contains(d.greatest));
            for x in d.set.iter() {
                prop_assert!(p.leq(x, d.greatest));
            }
        }
    }

    #[test]
    fn directedness_matches_pairwise_definition(p in poset_strategy(6)) {
        let n = p.len();
        let mut emitted: Vec<u32> = p.directed_subsets(0).map(|d| d.set.bits()).collect();
        emitted.sort_unstable();
        let mut expected = Vec::new();
        for bits in 1..(1u32 << n) {
            let s = Subset::from_bits(n, bits);
            // pairwise definition, spelled out
            let directed = s.iter().all(|x| {
                s.iter()
                    .all(|y| s.iter().any(|z| p.leq(x, z) && p.leq(y, z)))
            });
            if directed {
                expected.push(bits);
            }
        }
        prop_assert_eq!(emitted, expected);
    }

    #[test]
    fn sup_is_least_upper_bound(p in poset_strategy(7)) {
        let n = p.len();
        for bits in 0..(1u32 << n) {
            let s = Subset::from_bits(n, bits);
            let b = p.bounds(&s).unwrap();
            if let Some(sup) = b.sup {
                prop_assert!(b.upper_bounds.contains(sup));
                for u in b.upper_bounds.iter() {
                    prop_assert!(p.leq(sup, u));
                }
            } else {
                // no least element among the upper bounds
                prop_assert!(b
                    .upper_bounds
                    .iter()
                    .all(|u| !b.upper_bounds.is_subset_of(&p.up_set(u))));
            }
        }
    }

    #[test]
    fn complete_lattice_flag_matches_subset_sweep(p in poset_strategy(7)) {
        let n = p.len();
        let flags = p.structure_flags();
        let all_bounded = (0..(1u32 << n)).all(|bits| {
            let b = p.bounds(&Subset::from_bits(n, bits)).unwrap();
            b.sup.is_some() && b.inf.is_some()
        });
        prop_assert_eq!(flags.is_complete_lattice, all_bounded);

        let nonempty_infs = (1..(1u32 << n)).all(|bits| {
            p.bounds(&Subset::from_bits(n, bits)).unwrap().inf.is_some()
        });
        prop_assert_eq!(flags.is_complete_semilattice, nonempty_infs);
    }

    #[test]
    fn coprimes_are_primes_of_the_dual(p in poset_strategy(6)) {
        if let Ok(pc) = p.primes_coprimes() {
            let dual_pc = p.dual().primes_coprimes().unwrap();
            prop_assert_eq!(pc.coprime, dual_pc.prime);
            prop_assert_eq!(pc.prime, dual_pc.coprime);
        }
    }

    #[test]
    fn restriction_preserves_order(p in poset_strategy(6), seed in any::<u32>()) {
        let n = p.len();
        let s = Subset::from_bits(n, (seed & ((1 << n) - 1)) | 1);
        let q = p.restrict(&s);
        let kept: Vec<_> = s.iter().collect();
        for (i, &x) in kept.iter().enumerate() {
            for (j, &y) in kept.iter().enumerate() {
                prop_assert_eq!(
                    q.leq(domcheck_core::ElementId(i), domcheck_core::ElementId(j)),
                    p.leq(x, y)
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn subset_algebra_is_boolean(n in 1usize..=8, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let mask = (1u32 << n) - 1;
        let (a, b, c) = (
            Subset::from_bits(n, a & mask),
            Subset::from_bits(n, b & mask),
            Subset::from_bits(n, c & mask),
        );
        prop_assert_eq!(a.intersection(&b.union(&c)), a.intersection(&b).union(&a.intersection(&c)));
        prop_assert_eq!(a.complement().complement(), a);
        prop_assert!(a.intersection(&b).is_subset_of(&a));
        prop_assert!(a.is_subset_of(&a.union(&b)));
    }
}
