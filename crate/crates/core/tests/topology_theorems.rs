//! Topology-side properties: the finite collapse of the strong Scott family
//! onto the upper sets certified by the definitional oracle, the inclusion
//! chain of the six topologies, point-closure facts, the C-space bridge to
//! complete distributivity, and the theorem suite on random posets.

use proptest::prelude::*;

use domcheck_core::classifier::{classify, verify_theorems};
use domcheck_core::poset::{FinitePoset, Subset};
use domcheck_core::topology::{
    generate_topology, is_strong_scott_open_definitional, SpaceProperty, TopologyKind,
};

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

const ALL_KINDS: [TopologyKind; 6] = [
    TopologyKind::Upper,
    TopologyKind::Scott,
    TopologyKind::StrongScott,
    TopologyKind::Lower,
    TopologyKind::Lawson,
    TopologyKind::StrongLawson,
];

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, ..ProptestConfig::default() })]

    #[test]
    fn strong_scott_collapse_certified_by_the_oracle(p in poset_strategy(5)) {
        let n = p.len();
        let strong = generate_topology(&p, TopologyKind::StrongScott);
        let scott = generate_topology(&p, TopologyKind::Scott);
        prop_assert!(strong.same_opens(&scott));
        // every subset agrees with the definitional condition
        for bits in 0..(1u32 << n) {
            let u = Subset::from_bits(n, bits);
            let definitional = is_strong_scott_open_definitional(&p, &u).unwrap();
            prop_assert_eq!(strong.is_open(&u), definitional);
            prop_assert_eq!(definitional, p.is_upper_set(&u));
        }
    }

    #[test]
    fn inclusion_chain_of_topologies(p in poset_strategy(6)) {
        let upper = generate_topology(&p, TopologyKind::Upper);
        let strong = generate_topology(&p, TopologyKind::StrongScott);
        let scott = generate_topology(&p, TopologyKind::Scott);
        prop_assert!(upper.coarser_or_equal(&strong));
        prop_assert!(strong.coarser_or_equal(&scott));
        // Lawson refinements contain their halves
        let lower = generate_topology(&p, TopologyKind::Lower);
        let lawson_s = generate_topology(&p, TopologyKind::StrongLawson);
        prop_assert!(strong.coarser_or_equal(&lawson_s));
        prop_assert!(lower.coarser_or_equal(&lawson_s));
    }

    #[test]
    fn point_closures_and_upper_set_recovery(p in poset_strategy(6)) {
        let strong = generate_topology(&p, TopologyKind::StrongScott);
        prop_assert!(strong.space_property(SpaceProperty::T0));
        for x in p.elements() {
            prop_assert_eq!(strong.point_closure(x), p.down_set(x));
        }
        let n = p.len();
        for bits in 0..(1u32 << n) {
            let a = Subset::from_bits(n, bits);
            if !p.is_upper_set(&a) {
                continue;
            }
            let mut inter = Subset::full(n);
            for u in strong.opens() {
                if a.is_subset_of(u) {
                    inter = inter.intersection(u);
                }
            }
            prop_assert_eq!(inter, a);
        }
    }

    #[test]
    fn specialization_recovers_the_poset_for_all_kinds(p in poset_strategy(6)) {
        for kind in [TopologyKind::Upper, TopologyKind::Scott, TopologyKind::StrongScott] {
            let t = generate_topology(&p, kind);
            prop_assert!(t.specialization_order().unwrap().same_order(&p));
        }
        for kind in [TopologyKind::Lawson, TopologyKind::StrongLawson] {
            // refinements by the lower topology separate more points but keep
            // the same closure of singletons downward only when order is
            // discrete; the specialization of the join is the discrete order
            // exactly when the topology is T1. Just check T0 and consistency.
            let t = generate_topology(&p, kind);
            let spec = t.specialization_order().unwrap();
            for x in p.elements() {
                for y in p.elements() {
                    prop_assert_eq!(spec.leq(x, y), t.point_closure(y).contains(x));
                }
            }
        }
    }

    #[test]
    fn c_space_bridges_to_complete_distributivity(p in poset_strategy(4)) {
        for kind in ALL_KINDS {
            let t = generate_topology(&p, kind);
            let c_space = t.space_property(SpaceProperty::CSpace);
            let lattice = t.open_set_lattice().unwrap();
            let report = classify(&lattice).unwrap();
            let cd = report.completely_distributive.expect("open-set lattices are complete");
            prop_assert_eq!(c_space, cd.holds, "{:?} {:?}", p, kind);
        }
    }

    #[test]
    fn theorem_suite_passes_on_random_posets(p in poset_strategy(6)) {
        let report = verify_theorems(&p).unwrap();
        prop_assert!(report.all_pass(), "{:?}: {:?}", p, report.failures());
    }

    #[test]
    fn strong_lawson_is_hausdorff_and_discrete_when_t1(p in poset_strategy(5)) {
        let t = generate_topology(&p, TopologyKind::StrongLawson);
        prop_assert!(t.space_property(SpaceProperty::T2));
        // finite T1 topologies are discrete
        prop_assert_eq!(t.opens().len(), 1usize << p.len());
    }

    #[test]
    fn sobriety_of_the_strong_scott_space(p in poset_strategy(6)) {
        let t = generate_topology(&p, TopologyKind::StrongScott);
        prop_assert!(t.space_property(SpaceProperty::Sober));
        prop_assert!(t.space_property(SpaceProperty::LocallyCompact));
        prop_assert!(t.space_property(SpaceProperty::Compact));
    }
}

#[test]
fn lawson_and_strong_lawson_coincide_on_finite_posets() {
    for p in [
        FinitePoset::diamond(),
        FinitePoset::m3(),
        FinitePoset::two_atoms(),
        FinitePoset::chain(4),
    ] {
        let lawson = generate_topology(&p, TopologyKind::Lawson);
        let strong_lawson = generate_topology(&p, TopologyKind::StrongLawson);
        assert!(lawson.same_opens(&strong_lawson));
    }
}

#[test]
fn classification_report_chain_on_fixtures() {
    for p in [
        FinitePoset::diamond(),
        FinitePoset::m3(),
        FinitePoset::two_atoms(),
        FinitePoset::antichain(4),
        FinitePoset::chain(5),
    ] {
        let report = classify(&p).unwrap();
        assert!(report.continuous.holds);
        assert!(report.strongly_continuous.holds);
        let upsilon = generate_topology(&p, TopologyKind::Upper);
        let sigma = generate_topology(&p, TopologyKind::Scott);
        assert_eq!(report.hypercontinuous.holds, upsilon.same_opens(&sigma));
    }
}
