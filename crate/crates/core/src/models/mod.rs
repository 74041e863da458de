//! Symbolic countable dcpos with exact query answering.
//!
//! A model is presented by a decidable order rule over finitely many element
//! families, a catalog of its non-principal ideals (each with a cofinal chain
//! and its sup), and closed forms for binary up-set intersections. Way-below
//! style questions on the infinite carrier then reduce to finite sweeps:
//!
//! * principal ideals are handled by the order rule directly;
//! * every directed set without a greatest element is cofinal in a catalog
//!   chain, so an existential over its members collapses to one evaluation in
//!   the chain's eventually constant region.
//!
//! The sweeps are exact because every built-in satisfies *index locality*:
//! each closed form compares family indices with fixed offsets of at most
//! one, so a predicate in one free index is constant once that index exceeds
//! every other mentioned index by two. Quantifier windows are layered so each
//! sweep reaches two past the indices it must dominate; the bound-stability
//! tests check the visible consequence (verdicts do not depend on the
//! requested bound).

mod builtins;

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::poset::{FinitePoset, OrderError};

pub use builtins::BUILTIN_MODEL_NAMES;

const SLACK: u64 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("unknown model `{0}`")]
    UnknownModel(String),
    #[error("element `{element}` does not belong to any family of model `{model}`")]
    ElementOutOfFamily { element: String, model: String },
    #[error(transparent)]
    Order(#[from] OrderError),
}

/// One element of a symbolic model: a family token plus an index when the
/// family is parameterized.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelElement {
    pub family: Cow<'static, str>,
    pub index: Option<u64>,
}

impl ModelElement {
    pub fn atom(family: &'static str) -> ModelElement {
        ModelElement {
            family: Cow::Borrowed(family),
            index: None,
        }
    }

    pub fn indexed(family: &'static str, index: u64) -> ModelElement {
        ModelElement {
            family: Cow::Borrowed(family),
            index: Some(index),
        }
    }

    // Takes the Cow by reference so borrowed family tokens stay borrowed.
    #[allow(clippy::ptr_arg)]
    fn with_index(family: &Cow<'static, str>, index: u64) -> ModelElement {
        ModelElement {
            family: family.clone(),
            index: Some(index),
        }
    }

    pub fn index_or_zero(&self) -> u64 {
        self.index.unwrap_or(0)
    }
}

impl fmt::Display for ModelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}{}", self.family, i),
            None => write!(f, "{}", self.family),
        }
    }
}

impl fmt::Debug for ModelElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A family of model elements: one atom, or an indexed stream starting at
/// `start`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub token: Cow<'static, str>,
    /// `None` for an atom; `Some(first_index)` for a parameterized family.
    pub start: Option<u64>,
}

impl FamilySpec {
    pub fn atom(token: &'static str) -> FamilySpec {
        FamilySpec {
            token: Cow::Borrowed(token),
            start: None,
        }
    }

    pub fn indexed(token: &'static str, start: u64) -> FamilySpec {
        FamilySpec {
            token: Cow::Borrowed(token),
            start: Some(start),
        }
    }
}

/// A non-principal ideal of the model: membership predicate, a cofinal chain
/// and the sup of that chain.
#[derive(Clone)]
pub struct IdealDescriptor {
    pub id: Cow<'static, str>,
    pub sup: ModelElement,
    member: Arc<dyn Fn(&ModelElement) -> bool + Send + Sync>,
    chain: Arc<dyn Fn(u64) -> ModelElement + Send + Sync>,
}

impl IdealDescriptor {
    pub fn new(
        id: &'static str,
        sup: ModelElement,
        member: impl Fn(&ModelElement) -> bool + Send + Sync + 'static,
        chain: impl Fn(u64) -> ModelElement + Send + Sync + 'static,
    ) -> IdealDescriptor {
        IdealDescriptor {
            id: Cow::Borrowed(id),
            sup,
            member: Arc::new(member),
            chain: Arc::new(chain),
        }
    }

    pub fn contains(&self, e: &ModelElement) -> bool {
        (self.member)(e)
    }

    /// `k`-th chain element; monotone, with the family index growing with `k`.
    pub fn chain_element(&self, k: u64) -> ModelElement {
        (self.chain)(k)
    }

    /// First chain element whose family index is at least `target`.
    fn chain_at_index(&self, target: u64) -> ModelElement {
        let mut k = 0;
        loop {
            let e = self.chain_element(k);
            if e.index_or_zero() >= target {
                return e;
            }
            k += 1;
        }
    }

    /// Whether `e` lies on the cofinal chain itself.
    fn on_chain(&self, e: &ModelElement) -> bool {
        self.contains(e) && self.chain_at_index(e.index_or_zero()) == *e
    }
}

impl fmt::Debug for IdealDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealDescriptor({}, sup {})", self.id, self.sup)
    }
}

/// Closed form for a binary intersection of principal up sets.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum UpSetForm {
    Empty,
    /// The whole principal up set of one element.
    Principal(ModelElement),
    /// `{family_k : k >= from}`.
    Tail {
        family: Cow<'static, str>,
        from: u64,
    },
}

impl UpSetForm {
    pub fn tail(family: &'static str, from: u64) -> UpSetForm {
        UpSetForm::Tail {
            family: Cow::Borrowed(family),
            from,
        }
    }
}

/// The defining data of a symbolic model. Implementing this trait is the
/// extension point for user models; queries degrade to `Unknown` wherever a
/// closed form is missing.
pub trait ModelRules: Send + Sync {
    fn name(&self) -> &str;
    fn families(&self) -> Vec<FamilySpec>;
    /// The decidable order rule.
    fn leq(&self, x: &ModelElement, y: &ModelElement) -> bool;
    /// All non-principal ideals.
    fn ideal_catalog(&self) -> Vec<IdealDescriptor>;
    /// Closed form for `↑x ∩ ↑y`; `None` when the model has no closed form
    /// for this pair.
    fn up_intersection(&self, x: &ModelElement, y: &ModelElement) -> Option<UpSetForm>;
    /// Closed form for `y ∈ int ↑x` in the upper topology; `None` when
    /// unavailable.
    fn upper_interior_rel(&self, x: &ModelElement, y: &ModelElement) -> Option<bool>;
}

/// A symbolic dcpo ready for queries.
#[derive(Clone)]
pub struct DcpoModel {
    rules: Arc<dyn ModelRules>,
}

impl fmt::Debug for DcpoModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DcpoModel({})", self.name())
    }
}

/// Relations answerable on a symbolic model.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModelRelation {
    WayBelow,
    StrongWayBelow,
    Prec,
}

impl ModelRelation {
    pub fn label(&self) -> &'static str {
        match self {
            ModelRelation::WayBelow => "way-below",
            ModelRelation::StrongWayBelow => "strong-way-below",
            ModelRelation::Prec => "prec",
        }
    }
}

/// Three-valued outcome of a symbolic query.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Outcome {
    Holds,
    Fails,
    Unknown,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Holds => "holds",
            Outcome::Fails => "fails",
            Outcome::Unknown => "unknown",
        }
    }
}

/// Structured counterexample for a failing query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelWitness {
    /// Catalog ideal involved, when the failure came from a non-principal
    /// directed set.
    pub ideal: Option<String>,
    /// The element instantiating the failing quantifier.
    pub element: Option<ModelElement>,
    pub note: String,
}

/// Outcome plus provenance; `Fails` always carries a witness and the bound
/// used is always recorded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub witness: Option<ModelWitness>,
    pub bound: u64,
}

impl Verdict {
    fn holds(bound: u64) -> Verdict {
        Verdict {
            outcome: Outcome::Holds,
            witness: None,
            bound,
        }
    }

    fn fails(bound: u64, witness: ModelWitness) -> Verdict {
        Verdict {
            outcome: Outcome::Fails,
            witness: Some(witness),
            bound,
        }
    }

    fn unknown(bound: u64, note: &str) -> Verdict {
        Verdict {
            outcome: Outcome::Unknown,
            witness: Some(ModelWitness {
                ideal: None,
                element: None,
                note: note.to_string(),
            }),
            bound,
        }
    }

    pub fn is_holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.outcome == Outcome::Fails
    }
}

/// Classification verdicts for a symbolic model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelClassification {
    pub continuous: Verdict,
    pub strongly_continuous: Verdict,
    pub hypercontinuous: Verdict,
    pub bound: u64,
}

/// A finite truncation of a model. Classifications of the model are *not*
/// preserved by truncation; the caveat travels with the poset.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub poset: FinitePoset,
    pub caveat: &'static str,
}

pub const TRUNCATION_CAVEAT: &str =
    "finite truncation: classification verdicts are not preserved under truncation";

impl DcpoModel {
    /// Instantiates a built-in model by name.
    pub fn instantiate(name: &str) -> Result<DcpoModel, ModelError> {
        builtins::instantiate(name)
    }

    /// Wraps user-supplied rules.
    pub fn from_rules(rules: Arc<dyn ModelRules>) -> DcpoModel {
        DcpoModel { rules }
    }

    pub fn name(&self) -> &str {
        self.rules.name()
    }

    pub fn families(&self) -> Vec<FamilySpec> {
        self.rules.families()
    }

    pub fn ideal_catalog(&self) -> Vec<IdealDescriptor> {
        self.rules.ideal_catalog()
    }

    pub fn leq(&self, x: &ModelElement, y: &ModelElement) -> bool {
        self.rules.leq(x, y)
    }

    pub fn up_intersection(&self, x: &ModelElement, y: &ModelElement) -> Option<UpSetForm> {
        self.rules.up_intersection(x, y)
    }

    pub fn upper_interior_rel(&self, x: &ModelElement, y: &ModelElement) -> Option<bool> {
        self.rules.upper_interior_rel(x, y)
    }

    /// Checks the element against the declared families.
    pub fn validate(&self, e: &ModelElement) -> Result<(), ModelError> {
        let ok = self.families().iter().any(|f| {
            f.token == e.family
                && match (f.start, e.index) {
                    (None, None) => true,
                    (Some(start), Some(i)) => i >= start,
                    _ => false,
                }
        });
        if ok {
            Ok(())
        } else {
            Err(ModelError::ElementOutOfFamily {
                element: e.to_string(),
                model: self.name().to_string(),
            })
        }
    }

    /// Parses an element token like `a3`, `omega0`, `a_3`, `w2` or `b`.
    pub fn parse_element(&self, token: &str) -> Result<ModelElement, ModelError> {
        let families = self.families();
        for f in &families {
            if f.start.is_none() && f.token == token {
                return Ok(ModelElement {
                    family: f.token.clone(),
                    index: None,
                });
            }
        }
        if let Some(pos) = token.find(|c: char| c.is_ascii_digit()) {
            let (head, digits) = token.split_at(pos);
            let head = head.trim_end_matches('_');
            let head = if head == "w" { "omega" } else { head };
            if let Ok(index) = digits.parse::<u64>() {
                for f in &families {
                    if f.start.is_some() && f.token == head {
                        let e = ModelElement {
                            family: f.token.clone(),
                            index: Some(index),
                        };
                        self.validate(&e)?;
                        return Ok(e);
                    }
                }
            }
        }
        Err(ModelError::ElementOutOfFamily {
            element: token.to_string(),
            model: self.name().to_string(),
        })
    }

    /// All atoms plus every parameterized element with index at most `bound`,
    /// in declared family order.
    pub fn enumerate(&self, bound: u64) -> Vec<ModelElement> {
        let mut out = Vec::new();
        for f in self.families() {
            match f.start {
                None => out.push(ModelElement {
                    family: f.token.clone(),
                    index: None,
                }),
                Some(start) => {
                    for i in start..=bound {
                        out.push(ModelElement {
                            family: f.token.clone(),
                            index: Some(i),
                        });
                    }
                }
            }
        }
        out
    }

    /// Induced finite poset on `enumerate(n)`.
    pub fn truncate(&self, n: u64) -> Result<Truncation, ModelError> {
        let elems = self.enumerate(n);
        let names: Vec<String> = elems.iter().map(|e| e.to_string()).collect();
        let count = elems.len();
        let mut leq = vec![vec![false; count]; count];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                leq[i][j] = self.leq(x, y);
            }
        }
        let poset = FinitePoset::from_leq_table(names, &leq)?;
        Ok(Truncation {
            poset,
            caveat: TRUNCATION_CAVEAT,
        })
    }
}

// ---------------------------------------------------------------------------
// Query engine
//
// Window layering, for a requested bound Q (subjects of the top-level
// quantifier range over indices <= Q):
//
//   mids   <= Q + 2   (slice members, openness mids, tail probes)
//   reads  <= Q + 4   (upper-bound searches, upper-closure co-subjects)
//   matrix <= Q + 6   (relation tables; internal sweeps stay exact for every
//                      pair that is ever read, i.e. pairs with one side <= Q
//                      and the other <= Q + 4)
//
// Chain representatives for collapsed existentials sit beyond the matrix and
// are evaluated through closed forms directly.

struct Ctx<'m> {
    model: &'m DcpoModel,
    /// Subject horizon Q.
    outer: u64,
    /// Matrix horizon Q + 6.
    matrix: u64,
    elems: Vec<ModelElement>,
    index: HashMap<ModelElement, usize>,
    words: usize,
    /// `up[i]` = bitset of `{j : e_i <= e_j}`.
    up: Vec<Vec<u64>>,
    ideals: Vec<IdealDescriptor>,
}

fn set_bit(row: &mut [u64], i: usize) {
    row[i / 64] |= 1 << (i % 64);
}

fn get_bit(row: &[u64], i: usize) -> bool {
    row[i / 64] & (1 << (i % 64)) != 0
}

impl<'m> Ctx<'m> {
    fn new(model: &'m DcpoModel, bound: u64, referenced: &[&ModelElement]) -> Ctx<'m> {
        let mut outer = bound.max(3);
        for e in referenced {
            outer = outer.max(e.index_or_zero());
        }
        let matrix = outer + 3 * SLACK;
        let elems = model.enumerate(matrix);
        let index: HashMap<ModelElement, usize> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let words = elems.len().div_ceil(64);
        let mut up = vec![vec![0u64; words]; elems.len()];
        for (i, x) in elems.iter().enumerate() {
            for (j, y) in elems.iter().enumerate() {
                if model.leq(x, y) {
                    set_bit(&mut up[i], j);
                }
            }
        }
        Ctx {
            model,
            outer,
            matrix,
            elems,
            index,
            words,
            up,
            ideals: model.ideal_catalog(),
        }
    }

    fn mid_cap(&self) -> u64 {
        self.outer + SLACK
    }

    fn read_cap(&self) -> u64 {
        self.outer + 2 * SLACK
    }

    fn idx(&self, e: &ModelElement) -> Option<usize> {
        self.index.get(e).copied()
    }

    fn indices_upto(&self, cap: u64) -> impl Iterator<Item = usize> + '_ {
        self.elems
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.index_or_zero() <= cap)
            .map(|(i, _)| i)
    }

    /// `form ⊆ ↑z`, exact: the tail case sweeps through the flip region and
    /// relies on the eventually constant value beyond it.
    fn form_below_up(&self, form: &UpSetForm, z: &ModelElement) -> bool {
        match form {
            UpSetForm::Empty => true,
            UpSetForm::Principal(w) => self.model.leq(z, w),
            UpSetForm::Tail { family, from } => {
                let cap = (*from).max(z.index_or_zero() + 2 * SLACK);
                (*from..=cap).all(|k| self.model.leq(z, &ModelElement::with_index(family, k)))
            }
        }
    }

    /// Way-below over the full carrier: the principal part is `leq`, and each
    /// catalog ideal whose sup dominates `y` must contain `x`.
    fn way_below(&self, x: &ModelElement, y: &ModelElement) -> Result<(), ModelWitness> {
        if !self.model.leq(x, y) {
            return Err(ModelWitness {
                ideal: None,
                element: Some(y.clone()),
                note: format!("{x} is not below {y}"),
            });
        }
        for ideal in &self.ideals {
            if self.model.leq(y, &ideal.sup) && !ideal.contains(x) {
                return Err(ModelWitness {
                    ideal: Some(ideal.id.to_string()),
                    element: Some(x.clone()),
                    note: format!(
                        "{y} is below the sup of ideal {} but {x} is outside it",
                        ideal.id
                    ),
                });
            }
        }
        Ok(())
    }

    /// Strong way-below for one pair. `Ok(None)` means a closed form was
    /// missing; `Err` carries the witness.
    fn strong_way_below(
        &self,
        x: &ModelElement,
        y: &ModelElement,
    ) -> Result<Option<()>, ModelWitness> {
        let sweep = self
            .outer
            .max(x.index_or_zero().max(y.index_or_zero()) + SLACK);
        let window = self.model.enumerate(sweep);
        // Principal directed sets: both sides of the implication are exact at
        // arbitrary indices, so the sweep covers every comparison pattern.
        for g in &window {
            for a in &window {
                let Some(form) = self.model.up_intersection(g, a) else {
                    return Ok(None);
                };
                if self.form_below_up(&form, y) && !self.form_below_up(&form, x) {
                    return Err(ModelWitness {
                        ideal: None,
                        element: Some(a.clone()),
                        note: format!("principal directed set {{{g}}} with a = {a}"),
                    });
                }
            }
        }
        // Catalog ideals: the existential over a cofinal chain collapses to
        // one evaluation in the eventually constant region.
        for ideal in &self.ideals {
            let rep = ideal.chain_at_index(sweep + SLACK);
            for a in &window {
                let Some(premise) = self.model.up_intersection(&ideal.sup, a) else {
                    return Ok(None);
                };
                if !self.form_below_up(&premise, y) {
                    continue;
                }
                let Some(conclusion) = self.model.up_intersection(&rep, a) else {
                    return Ok(None);
                };
                if !self.form_below_up(&conclusion, x) {
                    return Err(ModelWitness {
                        ideal: Some(ideal.id.to_string()),
                        element: Some(a.clone()),
                        note: format!("ideal {} with a = {a}", ideal.id),
                    });
                }
            }
        }
        Ok(Some(()))
    }

    fn relation(&self, kind: ModelRelation, x: &ModelElement, y: &ModelElement) -> Verdict {
        let bound = self.outer;
        match kind {
            ModelRelation::WayBelow => match self.way_below(x, y) {
                Ok(()) => Verdict::holds(bound),
                Err(w) => Verdict::fails(bound, w),
            },
            ModelRelation::StrongWayBelow => match self.strong_way_below(x, y) {
                Ok(Some(())) => Verdict::holds(bound),
                Ok(None) => Verdict::unknown(
                    bound,
                    "model lacks a closed form for an up-set intersection",
                ),
                Err(w) => Verdict::fails(bound, w),
            },
            ModelRelation::Prec => match self.model.upper_interior_rel(x, y) {
                Some(true) => Verdict::holds(bound),
                Some(false) => Verdict::fails(
                    bound,
                    ModelWitness {
                        ideal: None,
                        element: Some(y.clone()),
                        note: format!(
                            "{y} is outside the upper-topology interior of the up set of {x}"
                        ),
                    },
                ),
                None => Verdict::unknown(bound, "model lacks an upper-interior closed form"),
            },
        }
    }

    /// Relation table over the whole matrix window. `None` when some closed
    /// form was missing.
    fn relation_rows(&self, kind: ModelRelation) -> Option<Vec<Vec<u64>>> {
        let n = self.elems.len();
        let mut rows = vec![vec![0u64; self.words]; n];
        match kind {
            ModelRelation::WayBelow => {
                for (i, x) in self.elems.iter().enumerate() {
                    for (j, y) in self.elems.iter().enumerate() {
                        if self.way_below(x, y).is_ok() {
                            set_bit(&mut rows[i], j);
                        }
                    }
                }
            }
            ModelRelation::Prec => {
                for (i, x) in self.elems.iter().enumerate() {
                    for (j, y) in self.elems.iter().enumerate() {
                        match self.model.upper_interior_rel(x, y) {
                            Some(true) => set_bit(&mut rows[i], j),
                            Some(false) => {}
                            None => return None,
                        }
                    }
                }
            }
            ModelRelation::StrongWayBelow => {
                // One cover bitset per distinct intersection form:
                // B(f) = {z : f ⊆ ↑z}; then x strongly-way-below y iff y ∈ B(f)
                // implies x ∈ B(f) for every form, plus the catalog rows.
                let mut forms: Vec<UpSetForm> = Vec::new();
                let mut form_ids: HashMap<UpSetForm, usize> = HashMap::new();
                for g in &self.elems {
                    for a in &self.elems {
                        let form = self.model.up_intersection(g, a)?;
                        if !form_ids.contains_key(&form) {
                            form_ids.insert(form.clone(), forms.len());
                            forms.push(form);
                        }
                    }
                }
                let covers: Vec<Vec<u64>> = forms
                    .iter()
                    .map(|form| {
                        let mut row = vec![0u64; self.words];
                        for (z_i, z) in self.elems.iter().enumerate() {
                            if self.form_below_up(form, z) {
                                set_bit(&mut row, z_i);
                            }
                        }
                        row
                    })
                    .collect();
                let mut catalog_rows: Vec<(usize, Vec<u64>)> = Vec::new();
                for ideal in &self.ideals {
                    let rep = ideal.chain_at_index(self.matrix + SLACK);
                    for a in &self.elems {
                        let premise = self.model.up_intersection(&ideal.sup, a)?;
                        let conclusion = self.model.up_intersection(&rep, a)?;
                        let mut concl_row = vec![0u64; self.words];
                        for (z_i, z) in self.elems.iter().enumerate() {
                            if self.form_below_up(&conclusion, z) {
                                set_bit(&mut concl_row, z_i);
                            }
                        }
                        catalog_rows.push((form_ids[&premise], concl_row));
                    }
                }
                for i in 0..n {
                    'pair: for j in 0..n {
                        for cover in &covers {
                            if get_bit(cover, j) && !get_bit(cover, i) {
                                continue 'pair;
                            }
                        }
                        for (premise_id, conclusion) in &catalog_rows {
                            if get_bit(&covers[*premise_id], j) && !get_bit(conclusion, i) {
                                continue 'pair;
                            }
                        }
                        set_bit(&mut rows[i], j);
                    }
                }
            }
        }
        Some(rows)
    }

    /// Membership `rel(x, e)` for elements possibly beyond the matrix: the
    /// index is canonicalized into the constant region relative to `x`.
    fn rel_member(&self, rows: &[Vec<u64>], x_i: usize, e: &ModelElement) -> bool {
        if let Some(e_i) = self.idx(e) {
            return get_bit(&rows[x_i], e_i);
        }
        let canon = ModelElement::with_index(
            &e.family,
            self.elems[x_i].index_or_zero() + 2 * SLACK,
        );
        let e_i = self
            .idx(&canon)
            .expect("canonicalized element is inside the matrix");
        get_bit(&rows[x_i], e_i)
    }

    /// The below-slice of `x` under a relation: explicit matrix members up to
    /// the mid cap, plus a tail flag per catalog ideal.
    fn slice(&self, rows_below: &[Vec<u64>], x_i: usize) -> Option<SliceForm> {
        let mut explicit = Vec::new();
        for j in self.indices_upto(self.mid_cap()) {
            if get_bit(&rows_below[x_i], j) {
                explicit.push(j);
            }
        }
        let mut tails = Vec::new();
        for (ideal_i, ideal) in self.ideals.iter().enumerate() {
            let probe_a = ideal.chain_at_index(self.outer + 1);
            let probe_b = ideal.chain_at_index(self.outer + SLACK);
            let in_a = get_bit(&rows_below[x_i], self.idx(&probe_a)?);
            let in_b = get_bit(&rows_below[x_i], self.idx(&probe_b)?);
            if in_a != in_b {
                return None; // unstable probes: catalog inadequate for this query
            }
            if in_b {
                tails.push(ideal_i);
            }
        }
        Some(SliceForm { explicit, tails })
    }

    /// Directedness and `sup = x` for a slice; the elementwise classification
    /// condition.
    fn slice_gives_back(&self, slice: &SliceForm, x_i: usize) -> bool {
        let x = &self.elems[x_i];
        if slice.explicit.is_empty() && slice.tails.is_empty() {
            return false;
        }
        for &i in &slice.explicit {
            for &j in &slice.explicit {
                let in_explicit = self.indices_upto(self.read_cap()).any(|u| {
                    get_bit(&self.up[i], u)
                        && get_bit(&self.up[j], u)
                        && (slice.explicit.contains(&u) || self.in_tail(slice, u))
                });
                let in_tail = slice.tails.iter().any(|&t| {
                    let rep = self.ideals[t].chain_at_index(self.mid_cap() + 1);
                    self.model.leq(&self.elems[i], &rep) && self.model.leq(&self.elems[j], &rep)
                });
                if !in_explicit && !in_tail {
                    return false;
                }
            }
        }
        let bounds_slice = |u: &ModelElement| {
            slice
                .explicit
                .iter()
                .all(|&i| self.model.leq(&self.elems[i], u))
                && slice
                    .tails
                    .iter()
                    .all(|&t| self.model.leq(&self.ideals[t].sup, u))
        };
        if !bounds_slice(x) {
            return false;
        }
        for u in self.indices_upto(self.read_cap()) {
            let u = &self.elems[u];
            if bounds_slice(u) && !self.model.leq(x, u) {
                return false;
            }
        }
        true
    }

    /// Chain members sitting past the explicit window, covered by a tail flag.
    fn in_tail(&self, slice: &SliceForm, u: usize) -> bool {
        let e = &self.elems[u];
        if e.index_or_zero() <= self.mid_cap() {
            return false;
        }
        slice.tails.iter().any(|&t| self.ideals[t].on_chain(e))
    }

    /// The membership view `U = {e : rel(x, e)}` lies in the generated
    /// strong Scott topology. The empty set is an empty union of base opens;
    /// any other `U` arising here must itself satisfy the base condition:
    /// an upper set, inaccessible for every catalog ideal.
    fn above_slice_is_open(&self, rows_above: &[Vec<u64>], x_i: usize) -> bool {
        // window emptiness implies emptiness: membership is eventually
        // constant in each family index, and the window covers the thresholds
        if self
            .indices_upto(self.matrix)
            .all(|j| !get_bit(&rows_above[x_i], j))
        {
            return true;
        }
        for u in self.indices_upto(self.mid_cap()) {
            if !get_bit(&rows_above[x_i], u) {
                continue;
            }
            for v in self.indices_upto(self.read_cap()) {
                if get_bit(&self.up[u], v) && !get_bit(&rows_above[x_i], v) {
                    return false;
                }
            }
        }
        for ideal in &self.ideals {
            let rep = ideal.chain_at_index(self.matrix + SLACK);
            for z_i in self.indices_upto(self.mid_cap()) {
                let z = &self.elems[z_i];
                let Some(premise) = self.model.up_intersection(&ideal.sup, z) else {
                    return false;
                };
                if !self.form_inside_membership(rows_above, x_i, &premise) {
                    continue;
                }
                let Some(conclusion) = self.model.up_intersection(&rep, z) else {
                    return false;
                };
                if !self.form_inside_membership(rows_above, x_i, &conclusion) {
                    return false;
                }
            }
        }
        true
    }

    /// `form ⊆ U` for the membership view `U = {e : rel(x, e)}`.
    fn form_inside_membership(&self, rows: &[Vec<u64>], x_i: usize, form: &UpSetForm) -> bool {
        match form {
            UpSetForm::Empty => true,
            UpSetForm::Principal(w) => self.rel_member(rows, x_i, w),
            UpSetForm::Tail { family, from } => {
                let cap = (*from).max(self.elems[x_i].index_or_zero() + 2 * SLACK);
                (*from..=cap)
                    .all(|k| self.rel_member(rows, x_i, &ModelElement::with_index(family, k)))
            }
        }
    }
}

struct SliceForm {
    explicit: Vec<usize>,
    tails: Vec<usize>,
}

/// Decides one relation query on a model, exactly for the built-ins.
pub fn model_relation(
    model: &DcpoModel,
    kind: ModelRelation,
    x: &ModelElement,
    y: &ModelElement,
    bound: u64,
) -> Result<Verdict, ModelError> {
    model.validate(x)?;
    model.validate(y)?;
    let ctx = Ctx::new(model, bound, &[x, y]);
    Ok(ctx.relation(kind, x, y))
}

/// Elementwise classification of a model over `enumerate(bound)`.
///
/// Exactness on the built-ins rests on index locality: the per-element
/// conditions are eventually constant in the element index, so the window's
/// fringe elements stand in for everything beyond it.
pub fn model_classify(model: &DcpoModel, bound: u64) -> ModelClassification {
    let bound = bound.max(2);
    let ctx = Ctx::new(model, bound, &[]);

    let classify_with = |kind: ModelRelation, need_open_above: bool| -> Verdict {
        let Some(rows_above) = ctx.relation_rows(kind) else {
            return Verdict::unknown(bound, "model lacks closed forms for this relation");
        };
        let n = ctx.elems.len();
        let mut rows_below = vec![vec![0u64; ctx.words]; n];
        for i in 0..n {
            for j in 0..n {
                if get_bit(&rows_above[i], j) {
                    set_bit(&mut rows_below[j], i);
                }
            }
        }
        for x_i in ctx.indices_upto(ctx.outer) {
            let x = &ctx.elems[x_i];
            let Some(slice) = ctx.slice(&rows_below, x_i) else {
                return Verdict::unknown(bound, "tail probes disagreed; catalog may be inadequate");
            };
            if !ctx.slice_gives_back(&slice, x_i) {
                let shown: Vec<String> = slice
                    .explicit
                    .iter()
                    .take(6)
                    .map(|&i| ctx.elems[i].to_string())
                    .collect();
                let tails: Vec<String> = slice
                    .tails
                    .iter()
                    .map(|&t| ctx.ideals[t].id.to_string())
                    .collect();
                return Verdict::fails(
                    bound,
                    ModelWitness {
                        ideal: tails.first().cloned(),
                        element: Some(x.clone()),
                        note: format!(
                            "below-slice {{{}}}{} of {x} is not directed with sup {x}",
                            shown.join(", "),
                            if tails.is_empty() {
                                String::new()
                            } else {
                                format!(" plus tails {tails:?}")
                            },
                        ),
                    },
                );
            }
            if need_open_above && !ctx.above_slice_is_open(&rows_above, x_i) {
                return Verdict::fails(
                    bound,
                    ModelWitness {
                        ideal: None,
                        element: Some(x.clone()),
                        note: format!("above-slice of {x} is not strongly Scott open"),
                    },
                );
            }
        }
        Verdict::holds(bound)
    };

    ModelClassification {
        continuous: classify_with(ModelRelation::WayBelow, false),
        strongly_continuous: classify_with(ModelRelation::StrongWayBelow, true),
        hypercontinuous: classify_with(ModelRelation::Prec, false),
        bound,
    }
}

/// Relation outcomes for every pair over `enumerate(bound)`, sharing one
/// window. Computed through the same tables that back [`model_classify`],
/// so it also cross-checks the pairwise path in the test suites.
pub fn model_relation_window(
    model: &DcpoModel,
    kind: ModelRelation,
    bound: u64,
) -> Vec<(ModelElement, ModelElement, Outcome)> {
    let ctx = Ctx::new(model, bound, &[]);
    let rows = ctx.relation_rows(kind);
    let subjects: Vec<usize> = ctx.indices_upto(bound).collect();
    let mut out = Vec::with_capacity(subjects.len() * subjects.len());
    for &i in &subjects {
        for &j in &subjects {
            let outcome = match &rows {
                Some(rows) => {
                    if get_bit(&rows[i], j) {
                        Outcome::Holds
                    } else {
                        Outcome::Fails
                    }
                }
                None => Outcome::Unknown,
            };
            out.push((ctx.elems[i].clone(), ctx.elems[j].clone(), outcome));
        }
    }
    out
}

/// Below- and above-slices of a model relation restricted to
/// `enumerate(bound)`.
pub fn model_slice(
    model: &DcpoModel,
    kind: ModelRelation,
    x: &ModelElement,
    bound: u64,
) -> Result<(Vec<ModelElement>, Vec<ModelElement>), ModelError> {
    model.validate(x)?;
    let ctx = Ctx::new(model, bound, &[x]);
    let mut below = Vec::new();
    let mut above = Vec::new();
    for e in model.enumerate(bound) {
        if ctx.relation(kind, &e, x).is_holds() {
            below.push(e.clone());
        }
        if ctx.relation(kind, x, &e).is_holds() {
            above.push(e);
        }
    }
    Ok((below, above))
}
