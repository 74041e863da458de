//! The built-in symbolic models: two separating examples for the strong
//! way-below relation, a successor-of-omega chain, and the flat natural
//! numbers over a bottom.
//!
//! Each model documents its catalog adequacy: every directed subset either
//! has a greatest element or is cofinal in one of the listed chains. The
//! truncation sweep in the test suite checks the finite shadow of that claim.

use std::sync::Arc;

use super::{
    DcpoModel, FamilySpec, IdealDescriptor, ModelElement, ModelError, ModelRules, UpSetForm,
};

/// Names accepted by [`DcpoModel::instantiate`].
pub const BUILTIN_MODEL_NAMES: [&str; 4] = [
    "example-3.10",
    "example-3.12",
    "chain-omega-plus-1",
    "flat-nat-bottom",
];

pub(super) fn instantiate(name: &str) -> Result<DcpoModel, ModelError> {
    match name {
        "example-3.10" => Ok(DcpoModel::from_rules(Arc::new(FlatAntichain {
            name: "example-3.10",
            bottom: "0",
            atoms: "a",
            start: 1,
        }))),
        "flat-nat-bottom" => Ok(DcpoModel::from_rules(Arc::new(FlatAntichain {
            name: "flat-nat-bottom",
            bottom: "bot",
            atoms: "n",
            start: 0,
        }))),
        "example-3.12" => Ok(DcpoModel::from_rules(Arc::new(LadderOverChain))),
        "chain-omega-plus-1" => Ok(DcpoModel::from_rules(Arc::new(OmegaPlusOne))),
        other => Err(ModelError::UnknownModel(other.to_string())),
    }
}

/// A bottom element under a countable antichain.
///
/// Every directed subset is a singleton or `{bottom, atom}`, so every
/// directed subset has a greatest element and the ideal catalog is empty.
struct FlatAntichain {
    name: &'static str,
    bottom: &'static str,
    atoms: &'static str,
    start: u64,
}

impl ModelRules for FlatAntichain {
    fn name(&self) -> &str {
        self.name
    }

    fn families(&self) -> Vec<FamilySpec> {
        vec![
            FamilySpec::atom(self.bottom),
            FamilySpec::indexed(self.atoms, self.start),
        ]
    }

    fn leq(&self, x: &ModelElement, y: &ModelElement) -> bool {
        x == y || x.family == self.bottom
    }

    fn ideal_catalog(&self) -> Vec<IdealDescriptor> {
        Vec::new()
    }

    fn up_intersection(&self, x: &ModelElement, y: &ModelElement) -> Option<UpSetForm> {
        if self.leq(x, y) {
            return Some(UpSetForm::Principal(y.clone()));
        }
        if self.leq(y, x) {
            return Some(UpSetForm::Principal(x.clone()));
        }
        Some(UpSetForm::Empty)
    }

    fn upper_interior_rel(&self, x: &ModelElement, y: &ModelElement) -> Option<bool> {
        // The upper-topology interior of the up set of the bottom is the whole
        // space; for an atom it is empty, since every nonempty open is
        // cofinite in the antichain.
        let _ = y;
        Some(x.family == self.bottom)
    }
}

/// An ascending chain `a_1 < a_2 < ...` with sup `omega0`, a side element `b`,
/// and a ladder `omega_n` above `b` and the chain prefixes:
/// `a_m < omega_n` iff `m <= n`, `b < omega_n` for `n >= 1`.
///
/// Directed subsets are the sets with a greatest element and the cofinal
/// subsets of the chain, so the catalog holds exactly the chain ideal.
struct LadderOverChain;

const A: &str = "a";
const B: &str = "b";
const OMEGA: &str = "omega";

impl LadderOverChain {
    fn chain_ideal() -> IdealDescriptor {
        IdealDescriptor::new(
            "C-chain",
            ModelElement::indexed(OMEGA, 0),
            |e| e.family == A,
            |k| ModelElement::indexed(A, k + 1),
        )
    }
}

impl ModelRules for LadderOverChain {
    fn name(&self) -> &str {
        "example-3.12"
    }

    fn families(&self) -> Vec<FamilySpec> {
        vec![
            FamilySpec::indexed(A, 1),
            FamilySpec::atom(B),
            FamilySpec::indexed(OMEGA, 0),
        ]
    }

    fn leq(&self, x: &ModelElement, y: &ModelElement) -> bool {
        if x == y {
            return true;
        }
        match (x.family.as_ref(), y.family.as_ref()) {
            (A, A) => x.index <= y.index,
            (A, OMEGA) => {
                let n = y.index_or_zero();
                n == 0 || x.index_or_zero() <= n
            }
            (B, OMEGA) => y.index_or_zero() >= 1,
            _ => false,
        }
    }

    fn ideal_catalog(&self) -> Vec<IdealDescriptor> {
        vec![Self::chain_ideal()]
    }

    fn up_intersection(&self, x: &ModelElement, y: &ModelElement) -> Option<UpSetForm> {
        if self.leq(x, y) {
            return Some(UpSetForm::Principal(y.clone()));
        }
        if self.leq(y, x) {
            return Some(UpSetForm::Principal(x.clone()));
        }
        // incomparable pairs
        let pair = (x.family.as_ref(), y.family.as_ref());
        let form = match pair {
            (A, B) => UpSetForm::tail(OMEGA, x.index_or_zero().max(1)),
            (B, A) => UpSetForm::tail(OMEGA, y.index_or_zero().max(1)),
            // an omega with anything incomparable to it meets nothing above
            _ => UpSetForm::Empty,
        };
        Some(form)
    }

    fn upper_interior_rel(&self, x: &ModelElement, y: &ModelElement) -> Option<bool> {
        // Up sets of chain elements and of b are upper-topology open; up sets
        // of ladder elements have empty interior (every nonempty open keeps a
        // cofinal part of the ladder).
        Some(match x.family.as_ref() {
            A | B => self.leq(x, y),
            _ => false,
        })
    }
}

/// The chain `c_0 < c_1 < ...` plus its sup `omega`.
struct OmegaPlusOne;

const C: &str = "c";
const TOP: &str = "omega";

impl ModelRules for OmegaPlusOne {
    fn name(&self) -> &str {
        "chain-omega-plus-1"
    }

    fn families(&self) -> Vec<FamilySpec> {
        vec![FamilySpec::indexed(C, 0), FamilySpec::atom(TOP)]
    }

    fn leq(&self, x: &ModelElement, y: &ModelElement) -> bool {
        match (x.family.as_ref(), y.family.as_ref()) {
            (C, C) => x.index <= y.index,
            (C, TOP) => true,
            (TOP, TOP) => true,
            _ => false,
        }
    }

    fn ideal_catalog(&self) -> Vec<IdealDescriptor> {
        vec![IdealDescriptor::new(
            "nat-chain",
            ModelElement::atom(TOP),
            |e| e.family == C,
            |k| ModelElement::indexed(C, k),
        )]
    }

    fn up_intersection(&self, x: &ModelElement, y: &ModelElement) -> Option<UpSetForm> {
        let z = if self.leq(x, y) { y } else { x };
        Some(UpSetForm::Principal(z.clone()))
    }

    fn upper_interior_rel(&self, x: &ModelElement, y: &ModelElement) -> Option<bool> {
        // Up sets of chain elements are open; the top's up set has empty
        // interior since every nonempty open contains a chain tail.
        Some(match x.family.as_ref() {
            C => self.leq(x, y),
            _ => false,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::super::*;

    fn el(model: &DcpoModel, token: &str) -> ModelElement {
        model.parse_element(token).unwrap()
    }

    #[test]
    fn flat_antichain_order_rule() {
        let m = DcpoModel::instantiate("example-3.10").unwrap();
        assert!(m.leq(&el(&m, "0"), &el(&m, "a5")));
        assert!(!m.leq(&el(&m, "a1"), &el(&m, "a2")));
        assert!(m.leq(&el(&m, "a2"), &el(&m, "a2")));
    }

    #[test]
    fn ladder_order_rule() {
        let m = DcpoModel::instantiate("example-3.12").unwrap();
        assert!(m.leq(&el(&m, "a2"), &el(&m, "omega3")));
        assert!(!m.leq(&el(&m, "a4"), &el(&m, "omega3")));
        assert!(m.leq(&el(&m, "a4"), &el(&m, "omega0")));
        assert!(m.leq(&el(&m, "b"), &el(&m, "omega1")));
        assert!(!m.leq(&el(&m, "b"), &el(&m, "omega0")));
        assert!(!m.leq(&el(&m, "omega0"), &el(&m, "omega1")));
    }

    #[test]
    fn ladder_up_intersections() {
        let m = DcpoModel::instantiate("example-3.12").unwrap();
        let a3 = el(&m, "a3");
        let b = el(&m, "b");
        assert_eq!(
            m.up_intersection(&a3, &b),
            Some(UpSetForm::tail("omega", 3))
        );
        assert_eq!(
            m.up_intersection(&el(&m, "omega0"), &b),
            Some(UpSetForm::Empty)
        );
        assert_eq!(
            m.up_intersection(&el(&m, "a1"), &el(&m, "a4")),
            Some(UpSetForm::Principal(el(&m, "a4")))
        );
    }

    #[test]
    fn unknown_model_is_rejected() {
        assert!(matches!(
            DcpoModel::instantiate("no-such-model"),
            Err(ModelError::UnknownModel(_))
        ));
    }

    #[test]
    fn element_parsing_and_validation() {
        let m = DcpoModel::instantiate("example-3.12").unwrap();
        assert_eq!(el(&m, "a_3"), ModelElement::indexed("a", 3));
        assert_eq!(el(&m, "w2"), ModelElement::indexed("omega", 2));
        assert!(m.parse_element("a0").is_err()); // chain starts at 1
        assert!(m.parse_element("zz9").is_err());
        assert!(m.validate(&ModelElement::indexed("omega", 0)).is_ok());
    }

    #[test]
    fn order_rules_are_partial_orders_on_windows() {
        for name in BUILTIN_MODEL_NAMES {
            let m = DcpoModel::instantiate(name).unwrap();
            // from_leq_table validates reflexivity, antisymmetry, transitivity
            m.truncate(8).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn truncations_match_known_shapes() {
        let m = DcpoModel::instantiate("example-3.10").unwrap();
        let t = m.truncate(2).unwrap();
        assert!(t.poset.same_order(&crate::poset::FinitePoset::two_atoms()));
        assert_eq!(t.caveat, TRUNCATION_CAVEAT);

        let m = DcpoModel::instantiate("example-3.12").unwrap();
        let t = m.truncate(1).unwrap();
        let p = &t.poset;
        assert_eq!(p.len(), 4);
        let a1 = p.index_of("a1").unwrap();
        let b = p.index_of("b").unwrap();
        let w0 = p.index_of("omega0").unwrap();
        let w1 = p.index_of("omega1").unwrap();
        assert!(p.lt(a1, w0) && p.lt(a1, w1) && p.lt(b, w1));
        assert!(!p.leq(b, w0) && !p.leq(w0, w1));

        // determinism
        let t2 = m.truncate(1).unwrap();
        assert!(t.poset.same_order(&t2.poset));
        assert_eq!(t.poset.names(), t2.poset.names());
    }
}
