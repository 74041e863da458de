//! The six order topologies on a finite poset, plus point-set machinery:
//! interiors, closures, specialization, separation, sobriety, compactness and
//! the C-space property.
//!
//! Open families are kept canonical (sorted by cardinality, then mask value),
//! so two topologies are equal exactly when their open lists are equal.

use std::fmt;

use thiserror::Error;

use crate::poset::{ElementId, FinitePoset, OrderError, Subset, MAX_CARRIER};

/// Which topology to generate on a poset.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TopologyKind {
    /// Generated by complements of principal down sets.
    Upper,
    /// Upper sets inaccessible by directed sups; on a finite carrier these are
    /// exactly the upper sets.
    Scott,
    /// Topology generated by the strongly Scott open sets as a base.
    StrongScott,
    /// Generated by complements of principal up sets.
    Lower,
    /// Common refinement of Scott and lower.
    Lawson,
    /// Common refinement of strong Scott and lower.
    StrongLawson,
    /// Anything supplied directly as an open family.
    Custom,
}

impl TopologyKind {
    pub fn label(&self) -> &'static str {
        match self {
            TopologyKind::Upper => "upper",
            TopologyKind::Scott => "scott",
            TopologyKind::StrongScott => "strong-scott",
            TopologyKind::Lower => "lower",
            TopologyKind::Lawson => "lawson",
            TopologyKind::StrongLawson => "strong-lawson",
            TopologyKind::Custom => "custom",
        }
    }
}

/// Point-set properties decidable on a finite space.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum SpaceProperty {
    T0,
    T1,
    T2,
    Sober,
    Compact,
    LocallyCompact,
    CSpace,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("space is not T0, specialization is not a partial order")]
    NotT0,
    #[error("open-set lattice with {count} opens exceeds the exact-tier cap of {max} elements")]
    CarrierTooLarge { count: usize, max: usize },
}

/// An explicit topology on a finite carrier: the full list of open sets.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteTopology {
    names: Vec<String>,
    opens: Vec<Subset>,
    kind: TopologyKind,
}

impl fmt::Debug for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteTopology({}, {} opens on {} points)",
            self.kind.label(),
            self.opens.len(),
            self.names.len()
        )
    }
}

impl FiniteTopology {
    /// Builds a topology from any family of subsets, closing it under unions
    /// and intersections and adding the empty set and the carrier.
    pub fn from_subbasis(names: Vec<String>, subbasis: &[Subset], kind: TopologyKind) -> FiniteTopology {
        let n = names.len();
        let mut seen = vec![false; 1usize << n];
        let mut opens: Vec<u32> = Vec::new();
        let push = |bits: u32, seen: &mut Vec<bool>, opens: &mut Vec<u32>| {
            if !seen[bits as usize] {
                seen[bits as usize] = true;
                opens.push(bits);
            }
        };
        push(0, &mut seen, &mut opens);
        push(Subset::full(n).bits(), &mut seen, &mut opens);
        for s in subbasis {
            push(s.bits(), &mut seen, &mut opens);
        }
        // Fixpoint under pairwise union and intersection; finite carrier makes
        // this the closure under arbitrary unions as well.
        let mut i = 0;
        while i < opens.len() {
            let a = opens[i];
            for j in 0..=i {
                let b = opens[j];
                push(a | b, &mut seen, &mut opens);
                push(a & b, &mut seen, &mut opens);
            }
            i += 1;
        }
        let opens = opens.into_iter().map(|bits| Subset::from_bits(n, bits)).collect();
        let mut t = FiniteTopology { names, opens, kind };
        t.canonicalize();
        t
    }

    /// Wraps an explicit open family, validating the topology axioms.
    pub fn from_opens(names: Vec<String>, opens: Vec<Subset>, kind: TopologyKind) -> Result<FiniteTopology, TopologyError> {
        let n = names.len();
        let mut t = FiniteTopology { names, opens, kind };
        t.canonicalize();
        let full = Subset::full(n);
        if !t.is_open(&Subset::empty(n)) || !t.is_open(&full) {
            return Err(TopologyError::Order(OrderError::NotAPartialOrder(
                "topology",
                "family must contain the empty set and the carrier".into(),
            )));
        }
        for a in &t.opens {
            for b in &t.opens {
                if !t.is_open(&a.union(b)) || !t.is_open(&a.intersection(b)) {
                    return Err(TopologyError::Order(OrderError::NotAPartialOrder(
                        "topology",
                        "family is not closed under union/intersection".into(),
                    )));
                }
            }
        }
        Ok(t)
    }

    fn canonicalize(&mut self) {
        self.opens.sort_by_key(|s| (s.len(), s.bits()));
        self.opens.dedup();
    }

    pub fn carrier_size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    /// Canonically ordered list of all open sets.
    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    pub fn closed_sets(&self) -> Vec<Subset> {
        self.opens.iter().map(|o| o.complement()).collect()
    }

    pub fn is_open(&self, s: &Subset) -> bool {
        self.opens.binary_search_by_key(&(s.len(), s.bits()), |o| (o.len(), o.bits())).is_ok()
    }

    pub fn is_closed(&self, s: &Subset) -> bool {
        self.is_open(&s.complement())
    }

    /// Every open of `self` is open in `other`.
    pub fn coarser_or_equal(&self, other: &FiniteTopology) -> bool {
        self.opens.iter().all(|o| other.is_open(o))
    }

    /// Same open family, ignoring the kind tag.
    pub fn same_opens(&self, other: &FiniteTopology) -> bool {
        self.opens == other.opens
    }

    fn check_carrier(&self, s: &Subset) -> Result<(), TopologyError> {
        if s.carrier_size() != self.carrier_size() {
            return Err(TopologyError::Order(OrderError::CarrierMismatch {
                expected: self.carrier_size(),
                got: s.carrier_size(),
            }));
        }
        Ok(())
    }

    /// Largest open inside `a` and smallest closed set containing `a`.
    pub fn interior_closure(&self, a: &Subset) -> Result<(Subset, Subset), TopologyError> {
        self.check_carrier(a)?;
        let n = self.carrier_size();
        let mut interior = Subset::empty(n);
        let mut closure = Subset::full(n);
        for o in &self.opens {
            if o.is_subset_of(a) {
                interior = interior.union(o);
            }
            let c = o.complement();
            if a.is_subset_of(&c) {
                closure = closure.intersection(&c);
            }
        }
        Ok((interior, closure))
    }

    pub fn interior(&self, a: &Subset) -> Subset {
        self.interior_closure(a).expect("carrier mismatch").0
    }

    pub fn closure(&self, a: &Subset) -> Subset {
        self.interior_closure(a).expect("carrier mismatch").1
    }

    pub fn point_closure(&self, x: ElementId) -> Subset {
        self.closure(&Subset::singleton(self.carrier_size(), x))
    }

    /// The specialization order `x <= y iff x ∈ cl{y}` as a poset.
    ///
    /// Fails with [`TopologyError::NotT0`] when distinct points share all
    /// their neighborhoods.
    pub fn specialization_order(&self) -> Result<FinitePoset, TopologyError> {
        let n = self.carrier_size();
        let closures: Vec<Subset> = (0..n).map(|i| self.point_closure(ElementId(i))).collect();
        let mut leq = vec![vec![false; n]; n];
        for x in 0..n {
            for y in 0..n {
                leq[x][y] = closures[y].contains(ElementId(x));
            }
        }
        FinitePoset::from_leq_table(self.names.clone(), &leq).map_err(|e| match e {
            OrderError::NotAPartialOrder(..) => TopologyError::NotT0,
            other => TopologyError::Order(other),
        })
    }

    /// Decides a point-set property by definitional sweep.
    pub fn space_property(&self, prop: SpaceProperty) -> bool {
        let n = self.carrier_size();
        match prop {
            SpaceProperty::T0 => self.is_t0(),
            SpaceProperty::T1 => pairs(n).all(|(x, y)| {
                self.opens.iter().any(|o| o.contains(x) && !o.contains(y))
                    && self.opens.iter().any(|o| o.contains(y) && !o.contains(x))
            }),
            SpaceProperty::T2 => pairs(n).all(|(x, y)| {
                self.opens.iter().any(|u| {
                    u.contains(x)
                        && self
                            .opens
                            .iter()
                            .any(|v| v.contains(y) && u.intersection(v).is_empty())
                })
            }),
            SpaceProperty::Sober => self.is_sober(),
            // A finite space always has a finite subcover; the check below is
            // the degenerate instance of the cover condition.
            SpaceProperty::Compact => {
                let mut union = Subset::empty(n);
                for o in &self.opens {
                    union = union.union(o);
                }
                union == Subset::full(n)
            }
            // Every subset of a finite space is compact, so any open
            // neighborhood is itself a compact neighborhood.
            SpaceProperty::LocallyCompact => (0..n).all(|x| {
                self.opens
                    .iter()
                    .filter(|u| u.contains(ElementId(x)))
                    .all(|u| self.opens.iter().any(|v| v.contains(ElementId(x)) && v.is_subset_of(u)))
            }),
            SpaceProperty::CSpace => self.is_c_space(),
        }
    }

    fn is_t0(&self) -> bool {
        pairs(self.carrier_size()).all(|(x, y)| {
            self.opens
                .iter()
                .any(|o| o.contains(x) != o.contains(y))
        })
    }

    /// Every irreducible closed set is the closure of exactly one point.
    fn is_sober(&self) -> bool {
        if !self.is_t0() {
            return false;
        }
        let n = self.carrier_size();
        let closures: Vec<Subset> = (0..n).map(|i| self.point_closure(ElementId(i))).collect();
        for c in self.closed_sets() {
            if !self.is_irreducible_closed(&c) {
                continue;
            }
            let witnesses = (0..n).filter(|&i| closures[i] == c).count();
            if witnesses != 1 {
                return false;
            }
        }
        true
    }

    /// Nonempty, and any two opens meeting it intersect inside it.
    pub fn is_irreducible_closed(&self, a: &Subset) -> bool {
        if a.is_empty() || !self.is_closed(a) {
            return false;
        }
        for u in &self.opens {
            if u.intersection(a).is_empty() {
                continue;
            }
            for v in &self.opens {
                if v.intersection(a).is_empty() {
                    continue;
                }
                if u.intersection(v).intersection(a).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// Every point of an open set sits in the interior of `↑y` for some `y`
    /// in the set; `↑` is taken in the specialization order. Defined for T0
    /// spaces only; non-T0 input yields `false`.
    fn is_c_space(&self) -> bool {
        let Ok(order) = self.specialization_order() else {
            return false;
        };
        for u in &self.opens {
            for x in u.iter() {
                let good = u.iter().any(|y| {
                    let up_y = order.up_set(y);
                    self.interior(&up_y).contains(x) && up_y.is_subset_of(u)
                });
                if !good {
                    return false;
                }
            }
        }
        true
    }

    /// Inclusion order on the open family as a finite poset.
    ///
    /// Opens are named `U0, U1, ...` in canonical order. Fails when the family
    /// is larger than the exact-tier carrier cap.
    pub fn open_set_lattice(&self) -> Result<FinitePoset, TopologyError> {
        let count = self.opens.len();
        if count > MAX_CARRIER {
            return Err(TopologyError::CarrierTooLarge {
                count,
                max: MAX_CARRIER,
            });
        }
        let names: Vec<String> = (0..count).map(|i| format!("U{i}")).collect();
        let mut leq = vec![vec![false; count]; count];
        for i in 0..count {
            for j in 0..count {
                leq[i][j] = self.opens[i].is_subset_of(&self.opens[j]);
            }
        }
        FinitePoset::from_leq_table(names, &leq).map_err(TopologyError::Order)
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (ElementId, ElementId)> {
    (0..n).flat_map(move |x| {
        (0..n).filter_map(move |y| {
            if x != y {
                Some((ElementId(x), ElementId(y)))
            } else {
                None
            }
        })
    })
}

/// Generates one of the six order topologies of a poset.
///
/// On a finite carrier the Scott opens, the strongly Scott opens and the
/// topology they generate all collapse to the family of upper sets; the
/// definitional oracle [`is_strong_scott_open_definitional`] certifies that
/// collapse in the test suites.
pub fn generate_topology(poset: &FinitePoset, kind: TopologyKind) -> FiniteTopology {
    let names = poset.names().to_vec();
    match kind {
        TopologyKind::Upper => {
            let subbasis: Vec<Subset> = poset
                .elements()
                .map(|x| poset.down_set(x).complement())
                .collect();
            FiniteTopology::from_subbasis(names, &subbasis, kind)
        }
        TopologyKind::Lower => {
            let subbasis: Vec<Subset> = poset
                .elements()
                .map(|x| poset.up_set(x).complement())
                .collect();
            FiniteTopology::from_subbasis(names, &subbasis, kind)
        }
        TopologyKind::Scott => FiniteTopology {
            names,
            opens: upper_sets(poset),
            kind,
        },
        TopologyKind::StrongScott => {
            // The strongly Scott opens form a base; the topology is their
            // closure under unions. Upper sets are closed under unions, so the
            // base and the topology coincide here.
            let base = strong_scott_base(poset);
            FiniteTopology::from_subbasis(names, &base, kind)
        }
        TopologyKind::Lawson => {
            let sigma = generate_topology(poset, TopologyKind::Scott);
            let omega = generate_topology(poset, TopologyKind::Lower);
            join_topologies(&sigma, &omega, kind)
        }
        TopologyKind::StrongLawson => {
            let sigma_s = generate_topology(poset, TopologyKind::StrongScott);
            let omega = generate_topology(poset, TopologyKind::Lower);
            join_topologies(&sigma_s, &omega, kind)
        }
        TopologyKind::Custom => FiniteTopology {
            names,
            opens: vec![Subset::empty(poset.len()), Subset::full(poset.len())],
            kind,
        },
    }
}

/// Common refinement: the topology generated by the union of both open
/// families as a subbasis.
pub fn join_topologies(a: &FiniteTopology, b: &FiniteTopology, kind: TopologyKind) -> FiniteTopology {
    debug_assert_eq!(a.carrier_size(), b.carrier_size());
    let mut subbasis: Vec<Subset> = a.opens().to_vec();
    subbasis.extend_from_slice(b.opens());
    FiniteTopology::from_subbasis(a.names().to_vec(), &subbasis, kind)
}

/// The strongly Scott open sets of a finite poset, used as the base of the
/// strong Scott topology. On a finite carrier every directed set has a
/// greatest element, making the inaccessibility condition automatic, so the
/// base is exactly the family of upper sets.
pub fn strong_scott_base(poset: &FinitePoset) -> Vec<Subset> {
    upper_sets(poset).into_iter().collect()
}

fn upper_sets(poset: &FinitePoset) -> Vec<Subset> {
    let n = poset.len();
    let mut opens = Vec::new();
    for bits in 0..(1u64 << n) {
        let s = Subset::from_bits(n, bits as u32);
        if poset.is_upper_set(&s) {
            opens.push(s);
        }
    }
    opens.sort_by_key(|s| (s.len(), s.bits()));
    opens
}

/// Definitional test for strong Scott openness.
///
/// `u` qualifies when (i) it is an upper set and (ii) for every directed
/// subset `D` and element `x`, if the upper bounds of `D` meet `↑x` inside
/// `u`, then already `↑d ∩ ↑x ⊆ u` for some `d ∈ D`. Quantifies over every
/// directed subset — this is the oracle that certifies the upper-set shortcut
/// used by [`generate_topology`].
pub fn is_strong_scott_open_definitional(
    poset: &FinitePoset,
    u: &Subset,
) -> Result<bool, OrderError> {
    if u.carrier_size() != poset.len() {
        return Err(OrderError::CarrierMismatch {
            expected: poset.len(),
            got: u.carrier_size(),
        });
    }
    if !poset.is_upper_set(u) {
        return Ok(false);
    }
    for d in poset.directed_subsets(0) {
        // Upper bounds of D: on a finite carrier this is the principal up set
        // of the greatest element.
        let ub = poset.up_set(d.greatest);
        for x in poset.elements() {
            let up_x = poset.up_set(x);
            if !ub.intersection(&up_x).is_subset_of(u) {
                continue;
            }
            let witnessed = d
                .set
                .iter()
                .any(|dd| poset.up_set(dd).intersection(&up_x).is_subset_of(u));
            if !witnessed {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(t: &FiniteTopology) -> Vec<u32> {
        t.opens().iter().map(|s| s.bits()).collect()
    }

    #[test]
    fn upper_topology_of_two_atoms() {
        let p = FinitePoset::two_atoms();
        let t = generate_topology(&p, TopologyKind::Upper);
        // {}, {a1}, {a2}, {a1,a2}, L
        assert_eq!(render(&t), vec![0b000, 0b010, 0b100, 0b110, 0b111]);
    }

    #[test]
    fn strong_scott_of_chain_two() {
        let p = FinitePoset::chain(2);
        let t = generate_topology(&p, TopologyKind::StrongScott);
        assert_eq!(render(&t), vec![0b00, 0b10, 0b11]);
    }

    #[test]
    fn lower_topology_of_antichain_is_discrete() {
        let p = FinitePoset::antichain(3);
        let t = generate_topology(&p, TopologyKind::Lower);
        assert_eq!(t.opens().len(), 8);
    }

    #[test]
    fn definitional_oracle_on_chain() {
        let p = FinitePoset::chain(2);
        assert!(is_strong_scott_open_definitional(&p, &Subset::from_bits(2, 0b10)).unwrap());
        assert!(is_strong_scott_open_definitional(&p, &Subset::full(2)).unwrap());
        // {bottom} is not an upper set
        assert!(!is_strong_scott_open_definitional(&p, &Subset::from_bits(2, 0b01)).unwrap());
    }

    #[test]
    fn interior_closure_examples() {
        let d = FinitePoset::diamond();
        let t = generate_topology(&d, TopologyKind::StrongScott);
        let a = d.index_of("a").unwrap();
        let (_, cl) = t.interior_closure(&Subset::singleton(4, a)).unwrap();
        assert_eq!(cl, d.down_set(a));

        let (int, cl) = t.interior_closure(&Subset::empty(4)).unwrap();
        assert!(int.is_empty() && cl.is_empty());

        let v = FinitePoset::two_atoms();
        let tv = generate_topology(&v, TopologyKind::Upper);
        let a1 = v.index_of("a1").unwrap();
        let (int, _) = tv.interior_closure(&v.up_set(a1)).unwrap();
        assert_eq!(int, v.up_set(a1));
    }

    #[test]
    fn specialization_recovers_the_poset() {
        for p in [
            FinitePoset::diamond(),
            FinitePoset::chain(3),
            FinitePoset::two_atoms(),
        ] {
            for kind in [
                TopologyKind::Upper,
                TopologyKind::Scott,
                TopologyKind::StrongScott,
            ] {
                let t = generate_topology(&p, kind);
                assert!(t.specialization_order().unwrap().same_order(&p));
            }
        }
        // lower topology induces the dual
        let c = FinitePoset::chain(3);
        let t = generate_topology(&c, TopologyKind::Lower);
        assert!(t.specialization_order().unwrap().same_order(&c.dual()));
    }

    #[test]
    fn discrete_topology_specializes_to_antichain() {
        let p = FinitePoset::antichain(2);
        let t = generate_topology(&p, TopologyKind::Lawson);
        assert!(t.specialization_order().unwrap().same_order(&p));
    }

    #[test]
    fn space_properties_on_chain() {
        let c = FinitePoset::chain(2);
        let t = generate_topology(&c, TopologyKind::StrongScott);
        assert!(t.space_property(SpaceProperty::T0));
        assert!(!t.space_property(SpaceProperty::T1));
        assert!(t.space_property(SpaceProperty::Sober));
        assert!(t.space_property(SpaceProperty::Compact));
        assert!(t.space_property(SpaceProperty::LocallyCompact));
        assert!(t.space_property(SpaceProperty::CSpace));
    }

    #[test]
    fn strong_lawson_on_diamond_is_hausdorff() {
        let d = FinitePoset::diamond();
        let t = generate_topology(&d, TopologyKind::StrongLawson);
        assert!(t.space_property(SpaceProperty::T2));
    }

    #[test]
    fn open_set_lattice_shapes() {
        let c = FinitePoset::chain(2);
        let t = generate_topology(&c, TopologyKind::StrongScott);
        let lat = t.open_set_lattice().unwrap();
        assert!(lat.same_order(&FinitePoset::chain(3)));

        let v = FinitePoset::two_atoms();
        let tv = generate_topology(&v, TopologyKind::Upper);
        let lat = tv.open_set_lattice().unwrap();
        assert_eq!(lat.len(), 5);
        assert!(lat.structure_flags().is_complete_lattice);
    }

    #[test]
    fn indiscrete_open_lattice_is_two_chain() {
        let names = vec!["x".to_string(), "y".to_string()];
        let t = FiniteTopology::from_opens(
            names,
            vec![Subset::empty(2), Subset::full(2)],
            TopologyKind::Custom,
        )
        .unwrap();
        let lat = t.open_set_lattice().unwrap();
        assert!(lat.same_order(&FinitePoset::chain(2)));
    }

    #[test]
    fn inclusion_chain_upsilon_sigma() {
        for p in [
            FinitePoset::diamond(),
            FinitePoset::m3(),
            FinitePoset::two_atoms(),
            FinitePoset::chain(4),
            FinitePoset::antichain(3),
        ] {
            let upsilon = generate_topology(&p, TopologyKind::Upper);
            let strong = generate_topology(&p, TopologyKind::StrongScott);
            let scott = generate_topology(&p, TopologyKind::Scott);
            assert!(upsilon.coarser_or_equal(&strong));
            assert!(strong.coarser_or_equal(&scott));
            assert!(strong.same_opens(&scott));
        }
    }
}
