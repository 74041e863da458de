//! Acceptance suite: one test per criterion, each printing a PASS line when
//! it completes. Run with `cargo test --test acceptance -- --nocapture` to
//! see the lines; any failure fails the corresponding test.

use std::time::Instant;

use domcheck::gen::{enumerate_labeled_posets, random_poset, Shape};
use domcheck_core::classifier::{classify, verify_theorems};
use domcheck_core::maps::{check_map, directions, PosetMap};
use domcheck_core::models::{
    model_classify, model_relation, model_slice, DcpoModel, ModelElement, ModelRelation, Outcome,
};
use domcheck_core::poset::{ElementId, FinitePoset, Subset};
use domcheck_core::relations::{aux_relation, RelationKind};
use domcheck_core::topology::{
    generate_topology, is_strong_scott_open_definitional, SpaceProperty, TopologyKind,
};

fn labeled_2_to_4() -> Vec<FinitePoset> {
    let mut out = Vec::new();
    for n in 2..=4 {
        out.extend(enumerate_labeled_posets(n).unwrap());
    }
    assert_eq!(out.len(), 3 + 19 + 219);
    out
}

/// Definitional way-below over every directed subset.
fn way_below_brute(p: &FinitePoset, x: ElementId, y: ElementId) -> bool {
    p.directed_subsets(0)
        .all(|d| !p.leq(y, d.greatest) || d.set.iter().any(|dd| p.leq(x, dd)))
}

/// Definitional strong way-below over every directed subset and witness.
fn strong_way_below_brute(p: &FinitePoset, x: ElementId, y: ElementId) -> bool {
    let up_x = p.up_set(x);
    let up_y = p.up_set(y);
    p.directed_subsets(0).all(|d| {
        let ub = p.up_set(d.greatest);
        p.elements().all(|a| {
            let slab = ub.intersection(&p.up_set(a));
            !slab.is_subset_of(&up_y)
                || d.set
                    .iter()
                    .any(|dd| p.up_set(dd).intersection(&p.up_set(a)).is_subset_of(&up_x))
        })
    })
}

fn check_finite_collapse(p: &FinitePoset) {
    let n = p.len();
    let upper = generate_topology(p, TopologyKind::Upper);
    let strong = generate_topology(p, TopologyKind::StrongScott);
    let scott = generate_topology(p, TopologyKind::Scott);

    // sigma^s = sigma_s = sigma = upper sets, certified by the oracle
    assert!(strong.same_opens(&scott), "{p:?}");
    for bits in 0..(1u64 << n) {
        let u = Subset::from_bits(n, bits as u32);
        let definitional = is_strong_scott_open_definitional(p, &u).unwrap();
        assert_eq!(definitional, p.is_upper_set(&u), "{p:?} {u:?}");
        assert_eq!(definitional, strong.is_open(&u), "{p:?} {u:?}");
    }
    // inclusion chain
    assert!(upper.coarser_or_equal(&strong));
    assert!(strong.coarser_or_equal(&scott));

    // relations collapse onto the order, validated against brute force
    let leq = aux_relation(p, RelationKind::Leq).unwrap();
    let wb = aux_relation(p, RelationKind::WayBelow).unwrap();
    let swb = aux_relation(p, RelationKind::StrongWayBelow).unwrap();
    assert!(wb.same_pairs(&leq), "{p:?}");
    assert!(swb.same_pairs(&leq), "{p:?}");
    for x in p.elements() {
        for y in p.elements() {
            assert_eq!(wb.holds(x, y), way_below_brute(p, x, y), "{p:?}");
            assert_eq!(swb.holds(x, y), strong_way_below_brute(p, x, y), "{p:?}");
        }
    }
}

#[test]
fn criterion_1_finite_collapse_certification() {
    let start = Instant::now();
    for p in labeled_2_to_4() {
        check_finite_collapse(&p);
    }
    for n in [5usize, 6] {
        for seed in 0..500u64 {
            let p = random_poset(n, seed, Shape::Any).unwrap();
            check_finite_collapse(&p);
        }
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs() < 60,
        "finite collapse took {elapsed:?}, budget is 60s"
    );
    println!("PASS criterion-1 finite-collapse-certification ({elapsed:?})");
}

#[test]
fn criterion_2_flat_antichain_regression() {
    let start = Instant::now();
    let m = DcpoModel::instantiate("example-3.10").unwrap();
    let report = model_classify(&m, 40);
    assert_eq!(report.strongly_continuous.outcome, Outcome::Holds);
    assert_eq!(report.hypercontinuous.outcome, Outcome::Fails);

    let zero = ModelElement::atom("0");
    for n in 1..=40 {
        let a_n = ModelElement::indexed("a", n);
        let (below, above) = model_slice(&m, ModelRelation::StrongWayBelow, &a_n, 40).unwrap();
        assert_eq!(below, vec![zero.clone(), a_n.clone()]);
        assert_eq!(above, vec![a_n]);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 5, "took {elapsed:?}, budget is 5s");
    println!("PASS criterion-2 flat-antichain-regression ({elapsed:?})");
}

#[test]
fn criterion_3_ladder_regression() {
    let start = Instant::now();
    let m = DcpoModel::instantiate("example-3.12").unwrap();

    let w1 = ModelElement::indexed("omega", 1);
    let verdict = model_relation(&m, ModelRelation::StrongWayBelow, &w1, &w1, 40).unwrap();
    assert_eq!(verdict.outcome, Outcome::Fails);
    let witness = verdict.witness.unwrap();
    assert_eq!(witness.ideal.as_deref(), Some("C-chain"));
    assert_eq!(witness.element, Some(ModelElement::atom("b")));

    let w0 = ModelElement::indexed("omega", 0);
    for x in m.enumerate(40) {
        let reflexive = model_relation(&m, ModelRelation::WayBelow, &x, &x, 40).unwrap();
        if x == w0 {
            assert_eq!(reflexive.outcome, Outcome::Fails);
        } else {
            assert_eq!(reflexive.outcome, Outcome::Holds, "{x}");
        }
    }

    let report = model_classify(&m, 40);
    assert_eq!(report.continuous.outcome, Outcome::Holds);
    assert_eq!(report.strongly_continuous.outcome, Outcome::Fails);
    assert_eq!(
        report.strongly_continuous.witness.as_ref().unwrap().element,
        Some(w1.clone())
    );
    let (below, _) = model_slice(&m, ModelRelation::StrongWayBelow, &w1, 40).unwrap();
    let allowed = [ModelElement::indexed("a", 1), ModelElement::atom("b")];
    assert!(below.iter().all(|e| allowed.contains(e)), "{below:?}");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 5, "took {elapsed:?}, budget is 5s");
    println!("PASS criterion-3 ladder-regression ({elapsed:?})");
}

#[test]
fn criterion_4_theorem_green_wall() {
    let start = Instant::now();
    let mut checked = 0usize;
    for p in labeled_2_to_4() {
        let report = verify_theorems(&p).unwrap();
        assert!(report.all_pass(), "{p:?}: {:?}", report.failures());
        checked += 1;
    }
    for seed in 0..250u64 {
        let n = 2 + (seed as usize % 7); // 2..=8
        let p = random_poset(n, seed, Shape::Any).unwrap();
        let report = verify_theorems(&p).unwrap();
        assert!(report.all_pass(), "{p:?}: {:?}", report.failures());
        let q = random_poset(n, seed, Shape::Lattice).unwrap();
        let report = verify_theorems(&q).unwrap();
        assert!(report.all_pass(), "{q:?}: {:?}", report.failures());
        checked += 2;
    }
    assert_eq!(checked, 241 + 500);
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}, budget is 5min");
    println!("PASS criterion-4 theorem-green-wall ({checked} posets, {elapsed:?})");
}

#[test]
fn criterion_5_c_space_bridge() {
    let start = Instant::now();
    let kinds = [
        TopologyKind::Upper,
        TopologyKind::Scott,
        TopologyKind::StrongScott,
        TopologyKind::Lower,
        TopologyKind::Lawson,
        TopologyKind::StrongLawson,
    ];
    for p in labeled_2_to_4() {
        for kind in kinds {
            let t = generate_topology(&p, kind);
            let c_space = t.space_property(SpaceProperty::CSpace);
            let lattice = t.open_set_lattice().unwrap();
            let report = classify(&lattice).unwrap();
            // classify itself enforces agreement of the triple-law route and
            // the co-prime route; any disagreement is a hard error
            let cd = report.completely_distributive.unwrap();
            assert_eq!(c_space, cd.holds, "{p:?} {kind:?}");
        }
    }
    let elapsed = start.elapsed();
    println!("PASS criterion-5 c-space-bridge ({elapsed:?})");
}

#[test]
fn criterion_6_interpolation() {
    let start = Instant::now();
    // symbolic side
    let m = DcpoModel::instantiate("example-3.10").unwrap();
    let elems = m.enumerate(40);
    for x in &elems {
        for y in &elems {
            if !model_relation(&m, ModelRelation::StrongWayBelow, x, y, 40)
                .unwrap()
                .is_holds()
            {
                continue;
            }
            assert!(
                elems.iter().any(|z| {
                    model_relation(&m, ModelRelation::StrongWayBelow, x, z, 40)
                        .unwrap()
                        .is_holds()
                        && model_relation(&m, ModelRelation::StrongWayBelow, z, y, 40)
                            .unwrap()
                            .is_holds()
                }),
                "no interpolant between {x} and {y}"
            );
        }
    }
    // finite side, exhaustively up to five elements
    for n in 1..=5 {
        for p in enumerate_labeled_posets(n).unwrap() {
            let swb = aux_relation(&p, RelationKind::StrongWayBelow).unwrap();
            for x in p.elements() {
                for y in p.elements() {
                    if !swb.holds(x, y) {
                        continue;
                    }
                    assert!(
                        p.elements().any(|z| swb.holds(x, z) && swb.holds(z, y)),
                        "{p:?}: no interpolant between {x} and {y}"
                    );
                }
            }
        }
    }
    let elapsed = start.elapsed();
    println!("PASS criterion-6 interpolation ({elapsed:?})");
}

#[test]
fn criterion_7_map_proposition() {
    let start = Instant::now();
    // deterministic pseudo-random maps from a splitmix-style walk
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        state >> 33
    };

    // 200 random monotone maps at n <= 5
    let mut monotone_checked = 0usize;
    let mut attempts = 0u64;
    while monotone_checked < 200 {
        attempts += 1;
        assert!(attempts < 200_000, "monotone map sampling stalled");
        let n_src = 1 + (next() as usize % 5);
        let n_dst = 1 + (next() as usize % 5);
        let src = random_poset(n_src, next(), Shape::Any).unwrap();
        let dst = random_poset(n_dst, next(), Shape::Any).unwrap();
        let table: Vec<ElementId> = (0..src.len())
            .map(|_| ElementId(next() as usize % dst.len()))
            .collect();
        let f = PosetMap::new(src, dst, table);
        if !check_map(&f).monotone {
            continue;
        }
        let d = directions(&f);
        assert!(d.implications_hold(), "{f:?}: {d:?}");
        monotone_checked += 1;
    }

    // sup-preserving maps between sup semilattices: all four conditions agree
    let mut sup_checked = 0usize;
    let mut attempts = 0u64;
    while sup_checked < 60 {
        attempts += 1;
        assert!(attempts < 500_000, "sup-preserving map sampling stalled");
        let n_src = 2 + (next() as usize % 4);
        let n_dst = 2 + (next() as usize % 4);
        let src = random_poset(n_src, next(), Shape::Lattice).unwrap();
        let dst = random_poset(n_dst, next(), Shape::Lattice).unwrap();
        let table: Vec<ElementId> = (0..src.len())
            .map(|_| ElementId(next() as usize % dst.len()))
            .collect();
        let f = PosetMap::new(src, dst, table);
        let report = check_map(&f);
        if report.preserves_finite_sups != Some(true) {
            continue;
        }
        let d = directions(&f);
        assert_eq!(d.four_way_equivalence, Some(true), "{f:?}: {d:?}");
        assert!(d.implications_hold());
        sup_checked += 1;
    }

    // the fixed counterexample map with its exact witness
    let src = FinitePoset::two_atoms();
    let dst = FinitePoset::chain(2);
    let f = PosetMap::new(
        src.clone(),
        dst,
        vec![ElementId(0), ElementId(1), ElementId(1)],
    );
    let report = check_map(&f);
    assert!(!report.upset_equation);
    let w = report.counterexample.unwrap();
    let a1 = src.index_of("a1").unwrap();
    let a2 = src.index_of("a2").unwrap();
    assert_eq!(w.directed, Subset::singleton(3, a1));
    assert_eq!(w.x, a2);

    let elapsed = start.elapsed();
    println!("PASS criterion-7 map-proposition ({elapsed:?})");
}

#[test]
fn criterion_8_bound_stability() {
    let start = Instant::now();
    for name in domcheck_core::models::BUILTIN_MODEL_NAMES {
        let m = DcpoModel::instantiate(name).unwrap();
        let baseline = model_classify(&m, 10);
        for bound in 10..=60u64 {
            let report = model_classify(&m, bound);
            for (label, got, want) in [
                (
                    "continuous",
                    report.continuous.outcome,
                    baseline.continuous.outcome,
                ),
                (
                    "strongly-continuous",
                    report.strongly_continuous.outcome,
                    baseline.strongly_continuous.outcome,
                ),
                (
                    "hypercontinuous",
                    report.hypercontinuous.outcome,
                    baseline.hypercontinuous.outcome,
                ),
            ] {
                assert_eq!(got, want, "{name}.{label} drifted at bound {bound}");
            }
        }
        // relation verdicts: reflexive probes across the same bounds
        for x in m.enumerate(3) {
            let baseline = model_relation(&m, ModelRelation::StrongWayBelow, &x, &x, 10)
                .unwrap()
                .outcome;
            for bound in 10..=60u64 {
                let verdict = model_relation(&m, ModelRelation::StrongWayBelow, &x, &x, bound)
                    .unwrap()
                    .outcome;
                assert_eq!(verdict, baseline, "{name}: swb({x},{x}) at bound {bound}");
            }
        }
    }
    let elapsed = start.elapsed();
    println!("PASS criterion-8 bound-stability ({elapsed:?})");
}
