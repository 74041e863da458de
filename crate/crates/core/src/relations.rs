//! The auxiliary binary relations on a finite poset: way-below, strong
//! way-below, the upper-interior relation, the prime-continuity relation and
//! the bounded-sup variant, plus the axiom and interpolation checks.
//!
//! Way-below style quantifiers run over principal ideals only: a finite
//! directed set has a greatest element, so only the greatest element matters
//! for the premise and it also serves as the witness. The test suites validate
//! this reduction against the full `directed_subsets` oracle.

use thiserror::Error;

use crate::poset::{ElementId, FinitePoset, OrderError, Subset};
use crate::topology::{generate_topology, TopologyKind};

/// Cap for the down-set enumeration behind the prime-continuity relation.
pub const MAX_TRIANGLE_CARRIER: usize = 12;

/// Which auxiliary relation to compute.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum RelationKind {
    /// The order itself.
    Leq,
    /// `x` way below `y`: every directed set with sup above `y` contains an
    /// element above `x`.
    WayBelow,
    /// Strong way-below: for every directed `D` and element `a`, if the upper
    /// bounds of `D` meet `↑a` inside `↑y` then `↑d ∩ ↑a ⊆ ↑x` for some `d`.
    StrongWayBelow,
    /// `x ≺ y`: `y` lies in the upper-topology interior of `↑x`.
    Prec,
    /// Prime continuity: `y ≤ ⋁S` forces `x ∈ ↓S`, for every subset `S`.
    Triangle,
    /// Way-below computed with sups taken inside principal down sets.
    WayBelowLocal,
}

impl RelationKind {
    pub fn label(&self) -> &'static str {
        match self {
            RelationKind::Leq => "leq",
            RelationKind::WayBelow => "way-below",
            RelationKind::StrongWayBelow => "strong-way-below",
            RelationKind::Prec => "prec",
            RelationKind::Triangle => "triangle",
            RelationKind::WayBelowLocal => "way-below-local",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RelationError {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("the prime-continuity relation requires a complete lattice")]
    NotACompleteLattice,
    #[error("axiom checks support way-below and strong way-below only, got {0}")]
    UnsupportedKind(&'static str),
}

/// A binary relation over a poset carrier as a full boolean table.
///
/// `rel(x, y)` is stored in row `x`, bit `y`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationMatrix {
    kind: RelationKind,
    rows: Vec<u32>,
    n: usize,
}

impl RelationMatrix {
    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    pub fn carrier_size(&self) -> usize {
        self.n
    }

    pub fn holds(&self, x: ElementId, y: ElementId) -> bool {
        self.rows[x.0] & (1 << y.0) != 0
    }

    /// `{y : x R y}`.
    pub fn above(&self, x: ElementId) -> Subset {
        Subset::from_bits(self.n, self.rows[x.0])
    }

    /// `{y : y R x}`.
    pub fn below(&self, x: ElementId) -> Subset {
        let mut bits = 0u32;
        for y in 0..self.n {
            if self.rows[y] & (1 << x.0) != 0 {
                bits |= 1 << y;
            }
        }
        Subset::from_bits(self.n, bits)
    }

    /// Pointwise containment: every pair of `self` is a pair of `other`.
    pub fn contained_in(&self, other: &RelationMatrix) -> bool {
        self.rows
            .iter()
            .zip(&other.rows)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn same_pairs(&self, other: &RelationMatrix) -> bool {
        self.rows == other.rows
    }
}

/// Both slices of a relation at `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceSets {
    pub below: Subset,
    pub above: Subset,
}

/// Computes one of the auxiliary relations over the whole carrier.
pub fn aux_relation(poset: &FinitePoset, kind: RelationKind) -> Result<RelationMatrix, RelationError> {
    let n = poset.len();
    let mut rows = vec![0u32; n];
    match kind {
        RelationKind::Leq => {
            for x in poset.elements() {
                rows[x.0] = poset.up_set(x).bits();
            }
        }
        RelationKind::WayBelow | RelationKind::WayBelowLocal => {
            // x << y iff every z above y is above x. For the bounded-sup
            // variant the upper bound z' of the directed set satisfies
            // g <= z', so the sup inside the principal down set of z' is the
            // greatest element again and the condition is unchanged.
            for x in poset.elements() {
                for y in poset.elements() {
                    if poset.up_set(y).is_subset_of(&poset.up_set(x)) {
                        rows[x.0] |= 1 << y.0;
                    }
                }
            }
        }
        RelationKind::StrongWayBelow => {
            for x in poset.elements() {
                let up_x = poset.up_set(x);
                for y in poset.elements() {
                    let up_y = poset.up_set(y);
                    let ok = poset.elements().all(|g| {
                        let up_g = poset.up_set(g);
                        poset.elements().all(|a| {
                            let slab = up_g.intersection(&poset.up_set(a));
                            !slab.is_subset_of(&up_y) || slab.is_subset_of(&up_x)
                        })
                    });
                    if ok {
                        rows[x.0] |= 1 << y.0;
                    }
                }
            }
        }
        RelationKind::Prec => {
            let upsilon = generate_topology(poset, TopologyKind::Upper);
            for x in poset.elements() {
                let int_up_x = upsilon.interior(&poset.up_set(x));
                rows[x.0] = int_up_x.bits();
            }
        }
        RelationKind::Triangle => {
            let flags = poset.structure_flags();
            if !flags.is_complete_lattice {
                return Err(RelationError::NotACompleteLattice);
            }
            if n > MAX_TRIANGLE_CARRIER {
                return Err(RelationError::Order(OrderError::CarrierTooLarge {
                    n,
                    max: MAX_TRIANGLE_CARRIER,
                }));
            }
            // Only the down closure of S matters, so quantify over lower sets:
            // below(y) = intersection of all lower sets whose sup dominates y.
            let mut below = vec![u32::MAX; n];
            for bits in 0..(1u64 << n) {
                let s = Subset::from_bits(n, bits as u32);
                if !poset.is_lower_set(&s) {
                    continue;
                }
                let sup = poset
                    .bounds(&s)
                    .map_err(RelationError::Order)?
                    .sup
                    .expect("complete lattice has all sups");
                for y in poset.elements() {
                    if poset.leq(y, sup) {
                        below[y.0] &= s.bits();
                    }
                }
            }
            for y in poset.elements() {
                for x in 0..n {
                    if below[y.0] & (1 << x) != 0 {
                        rows[x] |= 1 << y.0;
                    }
                }
            }
        }
    }
    Ok(RelationMatrix { kind, rows, n })
}

/// Below- and above-slices of `r` at `x`.
pub fn slice_sets(
    poset: &FinitePoset,
    r: &RelationMatrix,
    x: ElementId,
) -> Result<SliceSets, RelationError> {
    if r.carrier_size() != poset.len() {
        return Err(RelationError::Order(OrderError::CarrierMismatch {
            expected: poset.len(),
            got: r.carrier_size(),
        }));
    }
    Ok(SliceSets {
        below: r.below(x),
        above: r.above(x),
    })
}

/// Which auxiliary-relation axiom a counterexample violates.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AxiomKind {
    WithinOrder,
    OrderCompatibility,
    JoinStability,
    BottomRule,
    Interpolation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCounterexample {
    pub axiom: AxiomKind,
    pub elements: Vec<ElementId>,
}

/// Outcome of the auxiliary-relation axiom sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    /// The relation is contained in way-below, which is contained in the order.
    pub within_order: bool,
    /// `u <= x R y <= z` implies `u R z`.
    pub order_compatibility: bool,
    /// `x R z` and `y R z` imply `(x ∨ y) R z` whenever the join exists.
    pub join_stability: bool,
    /// The bottom element, when present, is related to everything.
    pub bottom_rule: bool,
    /// `x R y` implies `x R z R y` for some `z`.
    pub interpolation: bool,
    pub counterexamples: Vec<AxiomCounterexample>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.within_order
            && self.order_compatibility
            && self.join_stability
            && self.bottom_rule
            && self.interpolation
    }
}

/// Checks the auxiliary-relation axioms plus interpolation for a way-below
/// style relation.
pub fn relation_axioms(
    poset: &FinitePoset,
    r: &RelationMatrix,
) -> Result<AxiomReport, RelationError> {
    match r.kind() {
        RelationKind::WayBelow | RelationKind::StrongWayBelow => {}
        other => return Err(RelationError::UnsupportedKind(other.label())),
    }
    if r.carrier_size() != poset.len() {
        return Err(RelationError::Order(OrderError::CarrierMismatch {
            expected: poset.len(),
            got: r.carrier_size(),
        }));
    }
    let mut counterexamples = Vec::new();

    // r must sit inside way-below (for the strong variant) and inside the
    // order itself.
    let leq = aux_relation(poset, RelationKind::Leq)?;
    let way_below = aux_relation(poset, RelationKind::WayBelow)?;
    let bound = match r.kind() {
        RelationKind::StrongWayBelow => &way_below,
        _ => &leq,
    };
    let within_order = r.contained_in(bound) && r.contained_in(&leq);
    if !within_order {
        'outer: for x in poset.elements() {
            for y in poset.elements() {
                if r.holds(x, y) && !(bound.holds(x, y) && leq.holds(x, y)) {
                    counterexamples.push(AxiomCounterexample {
                        axiom: AxiomKind::WithinOrder,
                        elements: vec![x, y],
                    });
                    break 'outer;
                }
            }
        }
    }

    let mut order_compatibility = true;
    'compat: for u in poset.elements() {
        for x in poset.elements() {
            if !poset.leq(u, x) {
                continue;
            }
            for y in poset.elements() {
                if !r.holds(x, y) {
                    continue;
                }
                for z in poset.elements() {
                    if poset.leq(y, z) && !r.holds(u, z) {
                        order_compatibility = false;
                        counterexamples.push(AxiomCounterexample {
                            axiom: AxiomKind::OrderCompatibility,
                            elements: vec![u, x, y, z],
                        });
                        break 'compat;
                    }
                }
            }
        }
    }

    let mut join_stability = true;
    'join: for x in poset.elements() {
        for y in poset.elements() {
            let Some(xy) = poset.join(x, y) else { continue };
            for z in poset.elements() {
                if r.holds(x, z) && r.holds(y, z) && !r.holds(xy, z) {
                    join_stability = false;
                    counterexamples.push(AxiomCounterexample {
                        axiom: AxiomKind::JoinStability,
                        elements: vec![x, y, z],
                    });
                    break 'join;
                }
            }
        }
    }

    let mut bottom_rule = true;
    if let Some(bottom) = poset.bottom() {
        for x in poset.elements() {
            if !r.holds(bottom, x) {
                bottom_rule = false;
                counterexamples.push(AxiomCounterexample {
                    axiom: AxiomKind::BottomRule,
                    elements: vec![bottom, x],
                });
                break;
            }
        }
    }

    let mut interpolation = true;
    'interp: for x in poset.elements() {
        for y in poset.elements() {
            if !r.holds(x, y) {
                continue;
            }
            let has_mid = poset.elements().any(|z| r.holds(x, z) && r.holds(z, y));
            if !has_mid {
                interpolation = false;
                counterexamples.push(AxiomCounterexample {
                    axiom: AxiomKind::Interpolation,
                    elements: vec![x, y],
                });
                break 'interp;
            }
        }
    }

    Ok(AxiomReport {
        within_order,
        order_compatibility,
        join_stability,
        bottom_rule,
        interpolation,
        counterexamples,
    })
}
