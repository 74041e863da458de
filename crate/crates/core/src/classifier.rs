//! Structural classification of finite posets by two independent routes per
//! class, plus the theorem-equivalence suite that evaluates every
//! multi-condition statement about strong Scott structure and asserts the
//! conditions agree.
//!
//! Routes disagreeing is never a mathematical outcome on a finite carrier; it
//! means an implementation bug, so [`classify`] turns it into a hard
//! [`ClassifyError::InternalInconsistency`].

use thiserror::Error;

use crate::poset::{ElementId, FinitePoset, Subset};
use crate::relations::{aux_relation, RelationError, RelationKind, RelationMatrix};
use crate::topology::{
    generate_topology, FiniteTopology, SpaceProperty, TopologyKind,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("routes disagreed while classifying `{class}`: {details}")]
    InternalInconsistency { class: &'static str, details: String },
    #[error(transparent)]
    Relation(#[from] RelationError),
}

/// One evaluation route for a class verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RouteOutcome {
    pub route: &'static str,
    pub holds: bool,
    pub witness: Option<String>,
}

/// A class verdict along with the routes that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassVerdict {
    pub holds: bool,
    pub routes: Vec<RouteOutcome>,
}

impl ClassVerdict {
    fn from_routes(
        class: &'static str,
        routes: Vec<RouteOutcome>,
    ) -> Result<ClassVerdict, ClassifyError> {
        let holds = routes[0].holds;
        if routes.iter().any(|r| r.holds != holds) {
            let details = routes
                .iter()
                .map(|r| format!("{}={}", r.route, r.holds))
                .collect::<Vec<_>>()
                .join(", ");
            return Err(ClassifyError::InternalInconsistency { class, details });
        }
        Ok(ClassVerdict { holds, routes })
    }
}

/// Full classification of one finite poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationReport {
    pub continuous: ClassVerdict,
    pub hypercontinuous: ClassVerdict,
    pub strongly_continuous: ClassVerdict,
    /// Present only on complete lattices small enough for the down-set sweep.
    pub prime_continuous: Option<ClassVerdict>,
    /// Present only on complete lattices.
    pub completely_distributive: Option<ClassVerdict>,
}

/// Result of evaluating one multi-condition statement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremEntry {
    pub id: &'static str,
    /// Labels and truth values of the independently evaluated conditions.
    pub conditions: Vec<(&'static str, bool)>,
    /// `false` when the statement's structural premise does not hold here.
    pub applicable: bool,
    /// Conditions related as the statement asserts (all-equal or all-true).
    pub agree: bool,
    pub counterexample: Option<String>,
}

impl TheoremEntry {
    pub fn passed(&self) -> bool {
        !self.applicable || self.agree
    }

    fn equivalence(id: &'static str, conditions: Vec<(&'static str, bool)>) -> TheoremEntry {
        let first = conditions[0].1;
        let agree = conditions.iter().all(|&(_, c)| c == first);
        let counterexample = (!agree).then(|| render_conditions(&conditions));
        TheoremEntry {
            id,
            conditions,
            applicable: true,
            agree,
            counterexample,
        }
    }

    fn conjunction(id: &'static str, conditions: Vec<(&'static str, bool)>) -> TheoremEntry {
        let agree = conditions.iter().all(|&(_, c)| c);
        let counterexample = (!agree).then(|| render_conditions(&conditions));
        TheoremEntry {
            id,
            conditions,
            applicable: true,
            agree,
            counterexample,
        }
    }

    fn not_applicable(id: &'static str) -> TheoremEntry {
        TheoremEntry {
            id,
            conditions: Vec::new(),
            applicable: false,
            agree: true,
            counterexample: None,
        }
    }
}

fn render_conditions(conditions: &[(&'static str, bool)]) -> String {
    conditions
        .iter()
        .map(|(label, value)| format!("{label}={value}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// The whole theorem suite for one poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub entries: Vec<TheoremEntry>,
}

impl TheoremReport {
    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.passed())
    }

    pub fn failures(&self) -> Vec<&TheoremEntry> {
        self.entries.iter().filter(|e| !e.passed()).collect()
    }
}

/// `x` is in the relation's below-slice closure sense: slice directed and
/// `sup(slice) = x` for every element. Returns the first failing element.
fn slices_give_back_elements(poset: &FinitePoset, rel: &RelationMatrix) -> Option<ElementId> {
    for x in poset.elements() {
        let slice = rel.below(x);
        if !poset.is_directed(&slice) {
            return Some(x);
        }
        let sup = poset.bounds(&slice).expect("carrier matches").sup;
        if sup != Some(x) {
            return Some(x);
        }
    }
    None
}

fn slice_route(
    poset: &FinitePoset,
    rel: &RelationMatrix,
    route: &'static str,
    extra: impl Fn(ElementId) -> bool,
) -> RouteOutcome {
    if let Some(x) = slices_give_back_elements(poset, rel) {
        return RouteOutcome {
            route,
            holds: false,
            witness: Some(format!(
                "slice at {} is not directed with sup {0}",
                poset.name(x)
            )),
        };
    }
    for x in poset.elements() {
        if !extra(x) {
            return RouteOutcome {
                route,
                holds: false,
                witness: Some(format!("above-slice of {} is not open", poset.name(x))),
            };
        }
    }
    RouteOutcome {
        route,
        holds: true,
        witness: None,
    }
}

fn c_space_route(topology: &FiniteTopology, route: &'static str) -> RouteOutcome {
    RouteOutcome {
        route,
        holds: topology.space_property(SpaceProperty::CSpace),
        witness: None,
    }
}

/// Classifies a finite poset as continuous / hypercontinuous / strongly
/// continuous, plus prime continuity and complete distributivity on complete
/// lattices, each by at least two independent routes.
pub fn classify(poset: &FinitePoset) -> Result<ClassificationReport, ClassifyError> {
    let sigma = generate_topology(poset, TopologyKind::Scott);
    let sigma_s = generate_topology(poset, TopologyKind::StrongScott);
    let upsilon = generate_topology(poset, TopologyKind::Upper);

    let way_below = aux_relation(poset, RelationKind::WayBelow)?;
    let strong = aux_relation(poset, RelationKind::StrongWayBelow)?;
    let prec = aux_relation(poset, RelationKind::Prec)?;

    let continuous = ClassVerdict::from_routes(
        "continuous",
        vec![
            slice_route(poset, &way_below, "way-below-slices", |_| true),
            c_space_route(&sigma, "c-space-scott"),
        ],
    )?;

    let hypercontinuous = ClassVerdict::from_routes(
        "hypercontinuous",
        vec![
            slice_route(poset, &prec, "upper-interior-slices", |_| true),
            c_space_route(&upsilon, "c-space-upper"),
        ],
    )?;

    let strongly_continuous = ClassVerdict::from_routes(
        "strongly-continuous",
        vec![
            slice_route(poset, &strong, "strong-slices", |x| {
                sigma_s.is_open(&strong.above(x))
            }),
            c_space_route(&sigma_s, "c-space-strong-scott"),
        ],
    )?;

    let flags = poset.structure_flags();
    let prime_continuous = if flags.is_complete_lattice {
        match aux_relation(poset, RelationKind::Triangle) {
            Ok(triangle) => {
                let failing = poset.elements().find(|&x| {
                    poset.bounds(&triangle.below(x)).expect("carrier matches").sup != Some(x)
                });
                Some(ClassVerdict {
                    holds: failing.is_none(),
                    routes: vec![RouteOutcome {
                        route: "down-set-quantifier",
                        holds: failing.is_none(),
                        witness: failing
                            .map(|x| format!("{} is not the sup of its slice", poset.name(x))),
                    }],
                })
            }
            // The down-set sweep has its own carrier cap; beyond it the
            // verdict is simply not offered.
            Err(RelationError::Order(_)) => None,
            Err(e) => return Err(e.into()),
        }
    } else {
        None
    };

    let completely_distributive = if flags.is_complete_lattice {
        let distributive = flags.is_distributive_lattice;
        let raney = continuous.holds && every_element_sup_of_coprimes(poset);
        Some(ClassVerdict::from_routes(
            "completely-distributive",
            vec![
                RouteOutcome {
                    route: "triple-law",
                    holds: distributive,
                    witness: None,
                },
                RouteOutcome {
                    route: "coprime-generation",
                    holds: raney,
                    witness: None,
                },
            ],
        )?)
    } else {
        None
    };

    // hypercontinuous => strongly continuous => continuous; a violated chain
    // is a bug, not a result.
    if (hypercontinuous.holds && !strongly_continuous.holds)
        || (strongly_continuous.holds && !continuous.holds)
    {
        return Err(ClassifyError::InternalInconsistency {
            class: "implication-chain",
            details: format!(
                "hyper={}, strong={}, continuous={}",
                hypercontinuous.holds, strongly_continuous.holds, continuous.holds
            ),
        });
    }

    Ok(ClassificationReport {
        continuous,
        hypercontinuous,
        strongly_continuous,
        prime_continuous,
        completely_distributive,
    })
}

fn every_element_sup_of_coprimes(poset: &FinitePoset) -> bool {
    let Ok(pc) = poset.primes_coprimes() else {
        return false;
    };
    poset.elements().all(|x| {
        let below = poset.down_set(x).intersection(&pc.coprime);
        poset.bounds(&below).expect("carrier matches").sup == Some(x)
    })
}

// ---------------------------------------------------------------------------
// Inclusion order on an arbitrary open family.
//
// Open families can be larger than the exact-tier carrier cap (up to 2^n
// opens), so these checks run on plain indices with one bitset row per open.

struct FamilyOrder<'a> {
    opens: &'a [Subset],
    /// `up[i]` = bitset of `{j : opens[i] ⊆ opens[j]}`.
    up: Vec<Vec<u64>>,
    /// `down[i]` = bitset of `{j : opens[j] ⊆ opens[i]}`.
    down: Vec<Vec<u64>>,
}

impl<'a> FamilyOrder<'a> {
    fn new(opens: &'a [Subset]) -> FamilyOrder<'a> {
        let n = opens.len();
        let words = n.div_ceil(64);
        let mut up = vec![vec![0u64; words]; n];
        let mut down = vec![vec![0u64; words]; n];
        for i in 0..n {
            for j in 0..n {
                if opens[i].is_subset_of(&opens[j]) {
                    up[i][j / 64] |= 1 << (j % 64);
                    down[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        FamilyOrder { opens, up, down }
    }

    fn len(&self) -> usize {
        self.opens.len()
    }

    fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i][j / 64] & (1 << (j % 64)) != 0
    }

    fn row_subset(&self, a: &[u64], b: &[u64]) -> bool {
        a.iter().zip(b).all(|(x, y)| x & !y == 0)
    }

    /// Way-below inside the family order: `up(j) ⊆ up(i)`.
    fn way_below(&self, i: usize, j: usize) -> bool {
        self.row_subset(&self.up[j], &self.up[i])
    }

    fn member(row: &[u64], i: usize) -> bool {
        row[i / 64] & (1 << (i % 64)) != 0
    }

    /// Slice `{i : i way-below j}` directed with sup `j`, for every `j`; the
    /// continuity condition for the family as a lattice.
    fn continuous(&self, dual: bool) -> bool {
        let n = self.len();
        for j in 0..n {
            let mut slice: Vec<usize> = Vec::new();
            for i in 0..n {
                let wb = if dual {
                    self.row_subset(&self.down[j], &self.down[i])
                } else {
                    self.way_below(i, j)
                };
                if wb {
                    slice.push(i);
                }
            }
            // finite directed = has a greatest member
            let greatest = slice.iter().copied().find(|&g| {
                slice.iter().all(|&i| {
                    if dual {
                        self.leq(g, i)
                    } else {
                        self.leq(i, g)
                    }
                })
            });
            if greatest.is_none() {
                return false;
            }
            // least upper bound of the slice must be j itself
            let mut ub_ok = true;
            for u in 0..n {
                let is_ub = slice.iter().all(|&i| {
                    if dual {
                        self.leq(u, i)
                    } else {
                        self.leq(i, u)
                    }
                });
                if is_ub {
                    let dominates = if dual { self.leq(u, j) } else { self.leq(j, u) };
                    if !dominates {
                        ub_ok = false;
                        break;
                    }
                }
            }
            let j_is_bound = slice.iter().all(|&i| {
                if dual {
                    self.leq(j, i)
                } else {
                    self.leq(i, j)
                }
            });
            if !(ub_ok && j_is_bound) {
                return false;
            }
        }
        true
    }

    fn top(&self) -> usize {
        (0..self.len())
            .find(|&i| (0..self.len()).all(|j| self.leq(j, i)))
            .expect("open family has the full carrier")
    }

    fn bottom(&self) -> usize {
        (0..self.len())
            .find(|&i| (0..self.len()).all(|j| self.leq(i, j)))
            .expect("open family has the empty set")
    }

    /// Prime in the inclusion order: top, or the complement of the down set
    /// is a filter (nonempty, upward closed, codirected).
    fn is_prime(&self, p: usize) -> bool {
        if p == self.top() {
            return true;
        }
        let rest: Vec<usize> = (0..self.len())
            .filter(|&i| !Self::member(&self.down[p], i))
            .collect();
        self.is_filter_of(&rest)
    }

    fn is_prime_dual(&self, p: usize) -> bool {
        if p == self.bottom() {
            return true;
        }
        let rest: Vec<usize> = (0..self.len())
            .filter(|&i| !Self::member(&self.up[p], i))
            .collect();
        self.is_ideal_of(&rest)
    }

    fn is_filter_of(&self, members: &[usize]) -> bool {
        if members.is_empty() {
            return false;
        }
        // upward closed
        for &i in members {
            for j in 0..self.len() {
                if self.leq(i, j) && !members.contains(&j) {
                    return false;
                }
            }
        }
        // codirected
        members.iter().all(|&i| {
            members
                .iter()
                .all(|&j| members.iter().any(|&k| self.leq(k, i) && self.leq(k, j)))
        })
    }

    fn is_ideal_of(&self, members: &[usize]) -> bool {
        if members.is_empty() {
            return false;
        }
        for &i in members {
            for j in 0..self.len() {
                if self.leq(j, i) && !members.contains(&j) {
                    return false;
                }
            }
        }
        members.iter().all(|&i| {
            members
                .iter()
                .all(|&j| members.iter().any(|&k| self.leq(i, k) && self.leq(j, k)))
        })
    }

    /// The triple distributive law, with joins as unions and meets as
    /// intersections (both stay inside a finite topology).
    fn distributive(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.opens[x].intersection(&self.opens[y].union(&self.opens[z]));
                    let rhs = self.opens[x]
                        .intersection(&self.opens[y])
                        .union(&self.opens[x].intersection(&self.opens[z]));
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Independent evaluation of every multi-condition statement the classifier
/// is responsible for. Failures are data, not errors.
pub fn verify_theorems(poset: &FinitePoset) -> Result<TheoremReport, ClassifyError> {
    let sigma = generate_topology(poset, TopologyKind::Scott);
    let sigma_s = generate_topology(poset, TopologyKind::StrongScott);
    let upsilon = generate_topology(poset, TopologyKind::Upper);
    let lawson_s = generate_topology(poset, TopologyKind::StrongLawson);

    let way_below = aux_relation(poset, RelationKind::WayBelow)?;
    let strong = aux_relation(poset, RelationKind::StrongWayBelow)?;
    let prec = aux_relation(poset, RelationKind::Prec)?;

    let flags = poset.structure_flags();
    let n = poset.len();

    let continuous_def = slices_give_back_elements(poset, &way_below).is_none();
    let hyper_def = slices_give_back_elements(poset, &prec).is_none();
    let strong_slices_def = slices_give_back_elements(poset, &strong).is_none();
    let strong_above_open =
        poset.elements().all(|x| sigma_s.is_open(&strong.above(x)));
    let strong_def = strong_slices_def && strong_above_open;
    let strong_c_space = sigma_s.space_property(SpaceProperty::CSpace);

    let opens = sigma_s.opens();
    let family = FamilyOrder::new(opens);
    let filters: Vec<bool> = opens.iter().map(|u| poset.is_filter(u)).collect();
    let coprimes: Vec<bool> = (0..opens.len()).map(|i| family.is_prime_dual(i)).collect();
    let primes: Vec<bool> = (0..opens.len()).map(|i| family.is_prime(i)).collect();

    let mut entries = Vec::new();

    // Strong continuity <=> slices are directed with sup and open above.
    entries.push(TheoremEntry::equivalence(
        "strong-continuity-slice-characterization",
        vec![
            ("c-space-strong-scott", strong_c_space),
            ("strong-slices", strong_def),
        ],
    ));

    // Hypercontinuity <=> strong continuity plus collapse onto the upper
    // topology (relation form and topology form).
    entries.push(TheoremEntry::equivalence(
        "hypercontinuity-via-strong-collapse",
        vec![
            ("upper-interior-slices", hyper_def),
            (
                "strong-and-relations-match",
                strong_def && strong.same_pairs(&prec),
            ),
            (
                "strong-and-upper-topology",
                strong_def && upsilon.same_opens(&sigma_s),
            ),
        ],
    ));

    // Strong continuity <=> continuity plus collapse onto the Scott topology.
    entries.push(TheoremEntry::equivalence(
        "strong-continuity-via-scott-collapse",
        vec![
            ("strong-slices", strong_def),
            (
                "continuous-and-relations-match",
                continuous_def && strong.same_pairs(&way_below) && strong_above_open,
            ),
            (
                "continuous-and-scott-topology",
                continuous_def && sigma_s.same_opens(&sigma),
            ),
        ],
    ));

    // The six lattice-side characterizations of strong continuity.
    {
        let cond_above_open_and_union = strong_above_open
            && opens.iter().all(|u| {
                let mut union = Subset::empty(n);
                for x in u.iter() {
                    union = union.union(&strong.above(x));
                }
                union == *u
            });
        let filters_basis = opens.iter().all(|u| {
            u.iter().all(|x| {
                opens
                    .iter()
                    .zip(&filters)
                    .any(|(f, &is_f)| is_f && f.contains(x) && f.is_subset_of(u))
            })
        });
        let lattice_continuous = family.continuous(false);
        let enough_coprimes = opens.iter().enumerate().all(|(i, u)| {
            let mut union = Subset::empty(n);
            for (j, v) in opens.iter().enumerate() {
                if coprimes[j] && family.leq(j, i) {
                    union = union.union(v);
                }
            }
            union == *u
        });
        entries.push(TheoremEntry::equivalence(
            "strong-scott-lattice-characterizations",
            vec![
                ("c-space-strong-scott", strong_c_space),
                ("above-slices-form-opens", cond_above_open_and_union),
                ("open-filter-basis", filters_basis && lattice_continuous),
                ("enough-coprimes", enough_coprimes && lattice_continuous),
                ("family-distributive", family.distributive()),
                (
                    "family-and-dual-continuous",
                    family.continuous(false) && family.continuous(true),
                ),
            ],
        ));
    }

    // Complete-semilattice refinement: points recovered from infs of their
    // strong Scott neighborhoods.
    if flags.is_complete_semilattice {
        let inf_recovery = points_from_open_infs(poset, &sigma_s);
        entries.push(TheoremEntry::equivalence(
            "strong-scott-inf-recovery",
            vec![
                ("c-space-strong-scott", strong_c_space),
                ("above-open-and-inf-recovery", strong_above_open && inf_recovery),
            ],
        ));
    } else {
        entries.push(TheoremEntry::not_applicable("strong-scott-inf-recovery"));
    }

    // Point closures, T0, and upper sets as intersections of opens.
    {
        let closures_are_down_sets = poset
            .elements()
            .all(|x| sigma_s.point_closure(x) == poset.down_set(x));
        let t0 = sigma_s.space_property(SpaceProperty::T0);
        let upper_sets_recovered = (0..(1u64 << n)).all(|bits| {
            let a = Subset::from_bits(n, bits as u32);
            if !poset.is_upper_set(&a) {
                return true;
            }
            let mut inter = Subset::full(n);
            for u in opens {
                if a.is_subset_of(u) {
                    inter = inter.intersection(u);
                }
            }
            inter == a
        });
        entries.push(TheoremEntry::conjunction(
            "strong-scott-point-closures",
            vec![
                ("closures-are-down-sets", closures_are_down_sets),
                ("t0", t0),
                ("upper-sets-from-opens", upper_sets_recovered),
            ],
        ));
    }

    // Interior of an up set versus the strong way-below relation.
    {
        let forward = poset.elements().all(|x| {
            let int_up = sigma_s.interior(&poset.up_set(x));
            poset.elements().all(|y| !int_up.contains(y) || strong.holds(x, y))
        });
        let backward = !strong_def
            || poset.elements().all(|x| {
                let int_up = sigma_s.interior(&poset.up_set(x));
                poset.elements().all(|y| !strong.holds(x, y) || int_up.contains(y))
            });
        entries.push(TheoremEntry::conjunction(
            "strong-interior-vs-relation",
            vec![
                ("interior-implies-relation", forward),
                ("relation-implies-interior", backward),
            ],
        ));
    }

    // Basis facts on a strongly continuous poset.
    if strong_def {
        let membership_criterion = (0..(1u64 << n)).all(|bits| {
            let u = Subset::from_bits(n, bits as u32);
            if !poset.is_upper_set(&u) {
                return true;
            }
            let criterion = u
                .iter()
                .all(|x| u.iter().any(|v| strong.holds(v, x)));
            sigma_s.is_open(&u) == criterion
        });
        let above_slices_basis = opens.iter().all(|u| {
            u.iter().all(|x| {
                poset
                    .elements()
                    .any(|v| strong.holds(v, x) && strong.above(v).is_subset_of(u))
            })
        });
        let interiors_are_slices = poset
            .elements()
            .all(|x| sigma_s.interior(&poset.up_set(x)) == strong.above(x));
        let interiors_from_slices = (0..(1u64 << n)).all(|bits| {
            let a = Subset::from_bits(n, bits as u32);
            let mut union = Subset::empty(n);
            for v in poset.elements() {
                let above = strong.above(v);
                if above.is_subset_of(&a) {
                    union = union.union(&above);
                }
            }
            sigma_s.interior(&a) == union
        });
        entries.push(TheoremEntry::conjunction(
            "strong-basis-facts",
            vec![
                ("open-iff-slice-witnessed", membership_criterion),
                ("above-slices-are-a-basis", above_slices_basis),
                ("interiors-are-above-slices", interiors_are_slices),
                ("interiors-from-above-slices", interiors_from_slices),
            ],
        ));
    } else {
        entries.push(TheoremEntry::not_applicable("strong-basis-facts"));
    }

    // Co-primes of the open family are exactly the open filters (the empty
    // set is excluded: it is a co-prime by duality but filters are nonempty);
    // primes are the full space and the complements of point closures.
    {
        let coprimes_are_filters = opens.iter().enumerate().all(|(i, u)| {
            u.is_empty() || (coprimes[i] == filters[i])
        });
        let down_complements_prime = poset.elements().all(|a| {
            let u = poset.down_set(a).complement();
            let idx = opens.iter().position(|o| *o == u);
            idx.map(|i| primes[i]).unwrap_or(false)
        });
        let primes_are_down_complements = !strong_def
            || opens.iter().enumerate().all(|(i, u)| {
                if !primes[i] || *u == Subset::full(n) {
                    return true;
                }
                poset
                    .elements()
                    .any(|a| poset.down_set(a).complement() == *u)
            });
        entries.push(TheoremEntry::conjunction(
            "open-filters-and-primes",
            vec![
                ("coprimes-are-open-filters", coprimes_are_filters),
                ("down-complements-are-prime", down_complements_prime),
                ("primes-are-down-complements", primes_are_down_complements),
            ],
        ));
    }

    // Sobriety and local compactness of the strong Scott space.
    if strong_def {
        let sober = sigma_s.space_property(SpaceProperty::Sober);
        entries.push(TheoremEntry::conjunction(
            "strong-scott-sober",
            vec![("sober", sober)],
        ));
        let locally_compact = sigma_s.space_property(SpaceProperty::LocallyCompact);
        let compact_with_bottom = flags.bottom.is_none()
            || sigma_s.space_property(SpaceProperty::Compact);
        entries.push(TheoremEntry::conjunction(
            "strong-scott-locally-compact-sober",
            vec![
                ("locally-compact", locally_compact),
                ("sober", sober),
                ("compact-when-bottom", compact_with_bottom),
            ],
        ));
    } else {
        entries.push(TheoremEntry::not_applicable("strong-scott-sober"));
        entries.push(TheoremEntry::not_applicable(
            "strong-scott-locally-compact-sober",
        ));
    }

    // Hypercontinuity from infs of upper-topology neighborhoods.
    if flags.is_complete_semilattice {
        let inf_recovery = points_from_open_infs(poset, &upsilon);
        entries.push(TheoremEntry::equivalence(
            "upper-topology-inf-recovery",
            vec![
                ("upper-interior-slices", hyper_def),
                ("inf-recovery", inf_recovery),
            ],
        ));
    } else {
        entries.push(TheoremEntry::not_applicable("upper-topology-inf-recovery"));
    }

    // Strong Lawson separation.
    if flags.is_complete_semilattice {
        entries.push(TheoremEntry::conjunction(
            "strong-lawson-compact-t1",
            vec![
                ("compact", lawson_s.space_property(SpaceProperty::Compact)),
                ("t1", lawson_s.space_property(SpaceProperty::T1)),
            ],
        ));
    } else {
        entries.push(TheoremEntry::not_applicable("strong-lawson-compact-t1"));
    }
    if strong_def {
        entries.push(TheoremEntry::conjunction(
            "strong-lawson-hausdorff",
            vec![("t2", lawson_s.space_property(SpaceProperty::T2))],
        ));
    } else {
        entries.push(TheoremEntry::not_applicable("strong-lawson-hausdorff"));
    }

    Ok(TheoremReport { entries })
}

/// Every point is the sup of the infs of its open neighborhoods.
fn points_from_open_infs(poset: &FinitePoset, topology: &FiniteTopology) -> bool {
    poset.elements().all(|x| {
        let mut infs = Subset::empty(poset.len());
        for u in topology.opens() {
            if !u.contains(x) {
                continue;
            }
            let inf = poset
                .bounds(u)
                .expect("carrier matches")
                .inf
                .expect("complete semilattice: nonempty subsets have infs");
            infs.insert(inf);
        }
        poset.bounds(&infs).expect("carrier matches").sup == Some(x)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_antichain_is_hypercontinuous_unlike_its_infinite_parent() {
        // on the finite truncation the upper and Scott topologies coincide
        let report = classify(&FinitePoset::two_atoms()).unwrap();
        assert!(report.continuous.holds);
        assert!(report.strongly_continuous.holds);
        assert!(report.hypercontinuous.holds);
    }

    #[test]
    fn finite_posets_are_continuous_and_strongly_continuous() {
        for p in [
            FinitePoset::two_atoms(),
            FinitePoset::diamond(),
            FinitePoset::m3(),
            FinitePoset::chain(4),
            FinitePoset::antichain(3),
        ] {
            let report = classify(&p).unwrap();
            assert!(report.continuous.holds, "{p:?}");
            assert!(report.strongly_continuous.holds, "{p:?}");
            // implication chain is part of the verdict contract
            if report.hypercontinuous.holds {
                assert!(report.strongly_continuous.holds);
            }
        }
    }

    #[test]
    fn hypercontinuity_matches_topology_collapse() {
        for p in [
            FinitePoset::two_atoms(),
            FinitePoset::diamond(),
            FinitePoset::m3(),
            FinitePoset::chain(3),
            FinitePoset::antichain(4),
        ] {
            let report = classify(&p).unwrap();
            let upsilon = generate_topology(&p, TopologyKind::Upper);
            let sigma = generate_topology(&p, TopologyKind::Scott);
            assert_eq!(report.hypercontinuous.holds, upsilon.same_opens(&sigma), "{p:?}");
        }
    }

    #[test]
    fn distributivity_verdicts() {
        let d = classify(&FinitePoset::diamond()).unwrap();
        let cd = d.completely_distributive.unwrap();
        assert!(cd.holds);
        let pc = d.prime_continuous.unwrap();
        assert!(pc.holds);

        let m = classify(&FinitePoset::m3()).unwrap();
        assert!(!m.completely_distributive.unwrap().holds);
        assert!(!m.prime_continuous.unwrap().holds);
    }

    #[test]
    fn two_atoms_has_no_lattice_verdicts() {
        let report = classify(&FinitePoset::two_atoms()).unwrap();
        assert!(report.prime_continuous.is_none());
        assert!(report.completely_distributive.is_none());
    }

    #[test]
    fn theorem_suite_on_small_fixtures() {
        for p in [
            FinitePoset::chain(1),
            FinitePoset::chain(3),
            FinitePoset::diamond(),
            FinitePoset::m3(),
            FinitePoset::two_atoms(),
            FinitePoset::antichain(3),
        ] {
            let report = verify_theorems(&p).unwrap();
            assert!(
                report.all_pass(),
                "{p:?}: {:?}",
                report.failures()
            );
        }
    }

    #[test]
    fn lattice_entries_marked_not_applicable_without_structure() {
        let report = verify_theorems(&FinitePoset::antichain(2)).unwrap();
        let entry = report
            .entries
            .iter()
            .find(|e| e.id == "strong-lawson-compact-t1")
            .unwrap();
        assert!(!entry.applicable);
        assert!(entry.passed());
    }

    #[test]
    fn singleton_passes_everything() {
        let p = FinitePoset::chain(1);
        let c = classify(&p).unwrap();
        assert!(c.continuous.holds && c.strongly_continuous.holds && c.hypercontinuous.holds);
        assert!(verify_theorems(&p).unwrap().all_pass());
    }
}
