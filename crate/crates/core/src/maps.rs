//! Maps between finite posets: monotonicity, Scott and strong-Scott
//! continuity, the preimage conditions relating the two strong-Scott
//! presentations, the up-set image equation, and retract transfer of strong
//! continuity.

use crate::classifier::{classify, ClassifyError};
use crate::poset::{ElementId, FinitePoset, Subset};
use crate::topology::{
    generate_topology, is_strong_scott_open_definitional, strong_scott_base, TopologyKind,
};

/// A total function between two finite posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetMap {
    pub source: FinitePoset,
    pub target: FinitePoset,
    table: Vec<ElementId>,
}

impl PosetMap {
    pub fn new(source: FinitePoset, target: FinitePoset, table: Vec<ElementId>) -> PosetMap {
        assert_eq!(table.len(), source.len(), "map must be total on the source");
        assert!(table.iter().all(|y| y.0 < target.len()));
        PosetMap {
            source,
            target,
            table,
        }
    }

    pub fn identity(p: &FinitePoset) -> PosetMap {
        PosetMap::new(p.clone(), p.clone(), p.elements().collect())
    }

    pub fn apply(&self, x: ElementId) -> ElementId {
        self.table[x.0]
    }

    pub fn image(&self, s: &Subset) -> Subset {
        let mut out = Subset::empty(self.target.len());
        for x in s.iter() {
            out.insert(self.apply(x));
        }
        out
    }

    pub fn preimage(&self, s: &Subset) -> Subset {
        let mut out = Subset::empty(self.source.len());
        for x in self.source.elements() {
            if s.contains(self.apply(x)) {
                out.insert(x);
            }
        }
        out
    }

    pub fn compose_after(&self, inner: &PosetMap) -> PosetMap {
        assert_eq!(inner.target.len(), self.source.len());
        let table = inner.table.iter().map(|&x| self.apply(x)).collect();
        PosetMap::new(inner.source.clone(), self.target.clone(), table)
    }

    pub fn is_identity(&self) -> bool {
        self.source.len() == self.target.len()
            && self.table.iter().enumerate().all(|(i, y)| y.0 == i)
    }
}

/// Counterexample to the up-set image equation: a directed set and an element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapCounterexample {
    pub directed: Subset,
    pub x: ElementId,
}

/// Everything [`check_map`] decides about one map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapReport {
    pub monotone: bool,
    pub scott_continuous: bool,
    /// Preimages of strong-Scott opens are strong-Scott open (continuity for
    /// the generated topologies).
    pub strong_scott_continuous: bool,
    /// Preimages of base opens land in the generated topology.
    pub base_to_topology: bool,
    /// Preimages of base opens are again base opens, checked against the
    /// definitional oracle.
    pub base_to_base: bool,
    /// `↑f(↑g ∩ ↑x) = ↑f(g) ∩ ↑f(x)` for every directed set with greatest
    /// element `g` and every `x`.
    pub upset_equation: bool,
    /// Binary sups are preserved; `None` unless both sides are sup
    /// semilattices.
    pub preserves_finite_sups: Option<bool>,
    pub counterexample: Option<MapCounterexample>,
}

/// Evaluates all continuity conditions for one map.
///
/// The up-set equation is quantified over directed sets through their greatest
/// elements: the equation for a singleton `{g}` forces monotonicity, and for a
/// monotone map every directed set with greatest `g` reduces to `{g}`. The
/// full-enumeration oracle validates this in the test suite.
pub fn check_map(f: &PosetMap) -> MapReport {
    let p = &f.source;
    let q = &f.target;

    let monotone = p.elements().all(|x| {
        p.elements()
            .all(|y| !p.leq(x, y) || q.leq(f.apply(x), f.apply(y)))
    });

    let sigma_p = generate_topology(p, TopologyKind::Scott);
    let sigma_q = generate_topology(q, TopologyKind::Scott);
    let scott_continuous = sigma_q
        .opens()
        .iter()
        .all(|u| sigma_p.is_open(&f.preimage(u)));

    let sigma_s_p = generate_topology(p, TopologyKind::StrongScott);
    let sigma_s_q = generate_topology(q, TopologyKind::StrongScott);
    let strong_scott_continuous = sigma_s_q
        .opens()
        .iter()
        .all(|u| sigma_s_p.is_open(&f.preimage(u)));

    let base_q = strong_scott_base(q);
    let base_to_topology = base_q.iter().all(|u| sigma_s_p.is_open(&f.preimage(u)));
    let base_to_base = base_q.iter().all(|u| {
        is_strong_scott_open_definitional(p, &f.preimage(u)).expect("carriers match")
    });

    let mut upset_equation = true;
    let mut counterexample = None;
    'sweep: for g in p.elements() {
        for x in p.elements() {
            let slab = p.up_set(g).intersection(&p.up_set(x));
            let lhs = q.upward_closure(&f.image(&slab));
            let rhs = q.up_set(f.apply(g)).intersection(&q.up_set(f.apply(x)));
            if lhs != rhs {
                upset_equation = false;
                counterexample = Some(MapCounterexample {
                    directed: Subset::singleton(p.len(), g),
                    x,
                });
                break 'sweep;
            }
        }
    }

    let preserves_finite_sups = {
        let sp = p.structure_flags();
        let sq = q.structure_flags();
        if sp.is_sup_semilattice && sq.is_sup_semilattice {
            Some(p.elements().all(|x| {
                p.elements().all(|y| {
                    let join_p = p.join(x, y).expect("sup semilattice");
                    let join_q = q.join(f.apply(x), f.apply(y)).expect("sup semilattice");
                    f.apply(join_p) == join_q
                })
            }))
        } else {
            None
        }
    };

    MapReport {
        monotone,
        scott_continuous,
        strong_scott_continuous,
        base_to_topology,
        base_to_base,
        upset_equation,
        preserves_finite_sups,
        counterexample,
    }
}

/// The implications between the four continuity conditions for one map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectionsReport {
    pub report: MapReport,
    /// up-set equation implies base-to-base.
    pub equation_implies_base: bool,
    /// base-to-base implies base-to-topology.
    pub base_implies_topology: bool,
    /// base-to-topology and strong-Scott continuity agree.
    pub topology_iff_continuous: bool,
    /// With sup semilattices on both sides and a sup-preserving map, all four
    /// conditions agree; `None` when the premise does not apply.
    pub four_way_equivalence: Option<bool>,
}

impl DirectionsReport {
    pub fn implications_hold(&self) -> bool {
        self.equation_implies_base
            && self.base_implies_topology
            && self.topology_iff_continuous
            && self.four_way_equivalence.unwrap_or(true)
    }
}

/// Checks the one-directional implications between the continuity conditions,
/// and the full equivalence in the sup-semilattice case.
pub fn directions(f: &PosetMap) -> DirectionsReport {
    let report = check_map(f);
    let equation_implies_base = !report.upset_equation || report.base_to_base;
    let base_implies_topology = !report.base_to_base || report.base_to_topology;
    let topology_iff_continuous = report.base_to_topology == report.strong_scott_continuous;
    let four_way_equivalence = match report.preserves_finite_sups {
        Some(true) => {
            let conds = [
                report.strong_scott_continuous,
                report.base_to_topology,
                report.base_to_base,
                report.upset_equation,
            ];
            Some(conds.iter().all(|&c| c == conds[0]))
        }
        _ => None,
    };
    DirectionsReport {
        report,
        equation_implies_base,
        base_implies_topology,
        topology_iff_continuous,
        four_way_equivalence,
    }
}

/// Outcome of the retract check for a pair `f: P -> Q`, `g: Q -> P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractReport {
    pub f_continuous: bool,
    pub g_continuous: bool,
    pub composition_is_identity: bool,
    pub source_strongly_continuous: bool,
    pub target_strongly_continuous: bool,
    /// When the pair is a genuine retract of a strongly continuous source, the
    /// target must be strongly continuous as well.
    pub transfer_holds: bool,
}

/// Verifies that strong continuity transfers along a retract.
pub fn retract_transfer(f: &PosetMap, g: &PosetMap) -> Result<RetractReport, ClassifyError> {
    let f_continuous = check_map(f).strong_scott_continuous;
    let g_continuous = check_map(g).strong_scott_continuous;
    let composition_is_identity =
        g.source.len() == f.target.len() && f.compose_after(g).is_identity();

    let source_strongly_continuous = classify(&f.source)?.strongly_continuous.holds;
    let target_strongly_continuous = classify(&f.target)?.strongly_continuous.holds;

    let premise = f_continuous && g_continuous && composition_is_identity && source_strongly_continuous;
    let transfer_holds = !premise || target_strongly_continuous;

    Ok(RetractReport {
        f_continuous,
        g_continuous,
        composition_is_identity,
        source_strongly_continuous,
        target_strongly_continuous,
        transfer_holds,
    })
}
