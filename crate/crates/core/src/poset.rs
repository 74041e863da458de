//! Finite partial orders over small carriers, with exact lattice-theoretic
//! structure queries.
//!
//! Carriers are capped at [`MAX_CARRIER`] elements so every subset fits in a
//! `u32` mask and every quantifier sweep stays exact. All values are immutable
//! after construction; every operation here is a pure function.

use std::fmt;

use thiserror::Error;

/// Largest carrier size accepted by the exact finite tier.
pub const MAX_CARRIER: usize = 24;

/// Index of an element within a poset carrier.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ElementId(pub usize);

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Errors from constructing or querying finite posets.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("unknown element name `{0}`")]
    UnknownName(String),
    #[error("cover relation creates a cycle through `{0}`")]
    CycleDetected(String),
    #[error("carrier mismatch: expected {expected} elements, got {got}")]
    CarrierMismatch { expected: usize, got: usize },
    #[error("carrier of {n} elements exceeds the exact-tier cap of {max}")]
    CarrierTooLarge { n: usize, max: usize },
    #[error("poset must be nonempty")]
    EmptyCarrier,
    #[error("operation requires a lattice with top and bottom")]
    NotALattice,
    #[error("relation {0} is not a partial order: {1}")]
    NotAPartialOrder(&'static str, String),
}

/// A subset of a poset carrier, stored as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Subset {
    n: usize,
    bits: u32,
}

impl Subset {
    pub fn empty(n: usize) -> Self {
        debug_assert!(n <= MAX_CARRIER);
        Subset { n, bits: 0 }
    }

    pub fn full(n: usize) -> Self {
        Subset {
            n,
            bits: mask_full(n),
        }
    }

    pub fn singleton(n: usize, x: ElementId) -> Self {
        debug_assert!(x.0 < n);
        Subset {
            n,
            bits: 1 << x.0,
        }
    }

    pub fn from_bits(n: usize, bits: u32) -> Self {
        debug_assert_eq!(bits & !mask_full(n), 0);
        Subset { n, bits }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(n: usize, indices: I) -> Self {
        let mut bits = 0u32;
        for i in indices {
            debug_assert!(i < n);
            bits |= 1 << i;
        }
        Subset { n, bits }
    }

    pub fn carrier_size(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, x: ElementId) -> bool {
        x.0 < self.n && self.bits & (1 << x.0) != 0
    }

    pub fn insert(&mut self, x: ElementId) {
        debug_assert!(x.0 < self.n);
        self.bits |= 1 << x.0;
    }

    pub fn remove(&mut self, x: ElementId) {
        self.bits &= !(1 << x.0);
    }

    pub fn union(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.n, other.n);
        Subset {
            n: self.n,
            bits: self.bits | other.bits,
        }
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.n, other.n);
        Subset {
            n: self.n,
            bits: self.bits & other.bits,
        }
    }

    pub fn difference(&self, other: &Subset) -> Subset {
        debug_assert_eq!(self.n, other.n);
        Subset {
            n: self.n,
            bits: self.bits & !other.bits,
        }
    }

    pub fn complement(&self) -> Subset {
        Subset {
            n: self.n,
            bits: !self.bits & mask_full(self.n),
        }
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits & !other.bits == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = ElementId> + '_ {
        let bits = self.bits;
        (0..self.n).filter_map(move |i| {
            if bits & (1 << i) != 0 {
                Some(ElementId(i))
            } else {
                None
            }
        })
    }

    /// Renders the subset with element names, e.g. `{0, a1}`.
    pub fn render(&self, poset: &FinitePoset) -> String {
        let names: Vec<&str> = self.iter().map(|x| poset.name(x)).collect();
        format!("{{{}}}", names.join(", "))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subset({:#b}/{})", self.bits, self.n)
    }
}

fn mask_full(n: usize) -> u32 {
    if n == 0 {
        0
    } else {
        u32::MAX >> (32 - n)
    }
}

/// Exhaustively computed structural facts about a finite poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureFlags {
    pub is_dcpo: bool,
    pub is_sup_semilattice: bool,
    pub is_inf_semilattice: bool,
    pub is_complete_semilattice: bool,
    pub is_complete_lattice: bool,
    pub is_distributive_lattice: bool,
    pub bottom: Option<ElementId>,
    pub top: Option<ElementId>,
}

/// Bounds of a subset: the full sets plus least/greatest members when they exist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub upper_bounds: Subset,
    pub lower_bounds: Subset,
    pub sup: Option<ElementId>,
    pub inf: Option<ElementId>,
}

/// Prime and co-prime elements of a finite lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimesCoprimes {
    pub prime: Subset,
    pub coprime: Subset,
}

/// Closure direction for [`FinitePoset::closure`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Direction {
    Up,
    Down,
}

/// An exact finite partial order: named elements plus the full `leq` table.
///
/// `up[x]` holds the mask of `{y : x <= y}` and `down[x]` its dual, so every
/// order query is a couple of word operations.
#[derive(Clone, PartialEq, Eq)]
pub struct FinitePoset {
    names: Vec<String>,
    up: Vec<u32>,
    down: Vec<u32>,
}

impl fmt::Debug for FinitePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinitePoset({:?})", self.names)
    }
}

impl FinitePoset {
    /// Builds a poset from element names and cover pairs `(lo, hi)`.
    ///
    /// The order is the reflexive-transitive closure of the covers. Input
    /// whose closure would violate antisymmetry is rejected.
    pub fn from_covers(
        names: &[&str],
        covers: &[(&str, &str)],
    ) -> Result<FinitePoset, OrderError> {
        let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let cover_pairs: Vec<(String, String)> = covers
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        Self::from_covers_owned(owned, &cover_pairs)
    }

    pub fn from_covers_owned(
        names: Vec<String>,
        covers: &[(String, String)],
    ) -> Result<FinitePoset, OrderError> {
        let n = names.len();
        if n == 0 {
            return Err(OrderError::EmptyCarrier);
        }
        if n > MAX_CARRIER {
            return Err(OrderError::CarrierTooLarge { n, max: MAX_CARRIER });
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(OrderError::DuplicateName(name.clone()));
            }
        }
        let index_of = |token: &str| -> Result<usize, OrderError> {
            names
                .iter()
                .position(|m| m == token)
                .ok_or_else(|| OrderError::UnknownName(token.to_string()))
        };

        let mut up: Vec<u32> = (0..n).map(|i| 1 << i).collect();
        for (lo, hi) in covers {
            let lo = index_of(lo)?;
            let hi = index_of(hi)?;
            up[lo] |= 1 << hi;
        }
        transitive_close(&mut up);
        // Antisymmetry: x <= y <= x for x != y means the covers formed a cycle.
        for x in 0..n {
            for y in (x + 1)..n {
                if up[x] & (1 << y) != 0 && up[y] & (1 << x) != 0 {
                    return Err(OrderError::CycleDetected(names[x].clone()));
                }
            }
        }
        Ok(Self::from_up_masks(names, up))
    }

    /// Builds a poset from an explicit `leq` table; validates the order axioms.
    pub fn from_leq_table(names: Vec<String>, leq: &[Vec<bool>]) -> Result<FinitePoset, OrderError> {
        let n = names.len();
        if n == 0 {
            return Err(OrderError::EmptyCarrier);
        }
        if n > MAX_CARRIER {
            return Err(OrderError::CarrierTooLarge { n, max: MAX_CARRIER });
        }
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return Err(OrderError::CarrierMismatch {
                expected: n,
                got: leq.len(),
            });
        }
        let mut up = vec![0u32; n];
        for x in 0..n {
            for y in 0..n {
                if leq[x][y] {
                    up[x] |= 1 << y;
                }
            }
        }
        for x in 0..n {
            if up[x] & (1 << x) == 0 {
                return Err(OrderError::NotAPartialOrder(
                    "reflexivity",
                    format!("{} !<= itself", names[x]),
                ));
            }
            for y in 0..n {
                if x != y && up[x] & (1 << y) != 0 && up[y] & (1 << x) != 0 {
                    return Err(OrderError::NotAPartialOrder(
                        "antisymmetry",
                        format!("{} <= {} <= {}", names[x], names[y], names[x]),
                    ));
                }
                if up[x] & (1 << y) != 0 && up[y] & !up[x] != 0 {
                    return Err(OrderError::NotAPartialOrder(
                        "transitivity",
                        format!("up({}) misses part of up({})", names[x], names[y]),
                    ));
                }
            }
        }
        Ok(Self::from_up_masks(names, up))
    }

    fn from_up_masks(names: Vec<String>, up: Vec<u32>) -> FinitePoset {
        let n = names.len();
        let mut down = vec![0u32; n];
        for x in 0..n {
            for y in 0..n {
                if up[y] & (1 << x) != 0 {
                    down[x] |= 1 << y;
                }
            }
        }
        FinitePoset { names, up, down }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementId> {
        (0..self.len()).map(ElementId)
    }

    pub fn carrier(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn name(&self, x: ElementId) -> &str {
        &self.names[x.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<ElementId> {
        self.names.iter().position(|m| m == name).map(ElementId)
    }

    pub fn leq(&self, x: ElementId, y: ElementId) -> bool {
        self.up[x.0] & (1 << y.0) != 0
    }

    pub fn lt(&self, x: ElementId, y: ElementId) -> bool {
        x != y && self.leq(x, y)
    }

    /// `{y : x <= y}` as a subset.
    pub fn up_set(&self, x: ElementId) -> Subset {
        Subset::from_bits(self.len(), self.up[x.0])
    }

    /// `{y : y <= x}` as a subset.
    pub fn down_set(&self, x: ElementId) -> Subset {
        Subset::from_bits(self.len(), self.down[x.0])
    }

    fn check_carrier(&self, s: &Subset) -> Result<(), OrderError> {
        if s.carrier_size() != self.len() {
            return Err(OrderError::CarrierMismatch {
                expected: self.len(),
                got: s.carrier_size(),
            });
        }
        Ok(())
    }

    /// Upward or downward closure of a subset.
    pub fn closure(&self, s: &Subset, direction: Direction) -> Result<Subset, OrderError> {
        self.check_carrier(s)?;
        let rows = match direction {
            Direction::Up => &self.up,
            Direction::Down => &self.down,
        };
        let mut bits = 0u32;
        for x in s.iter() {
            bits |= rows[x.0];
        }
        Ok(Subset::from_bits(self.len(), bits))
    }

    pub fn upward_closure(&self, s: &Subset) -> Subset {
        self.closure(s, Direction::Up).expect("carrier mismatch")
    }

    pub fn downward_closure(&self, s: &Subset) -> Subset {
        self.closure(s, Direction::Down).expect("carrier mismatch")
    }

    pub fn is_upper_set(&self, s: &Subset) -> bool {
        self.upward_closure(s) == *s
    }

    pub fn is_lower_set(&self, s: &Subset) -> bool {
        self.downward_closure(s) == *s
    }

    /// Least element of `s` (below every member), if any.
    pub fn least_of(&self, s: &Subset) -> Option<ElementId> {
        s.iter().find(|&x| s.is_subset_of(&self.up_set(x)))
    }

    /// Greatest element of `s` (above every member), if any.
    pub fn greatest_of(&self, s: &Subset) -> Option<ElementId> {
        s.iter().find(|&x| s.is_subset_of(&self.down_set(x)))
    }

    /// Upper/lower bound sets plus sup and inf of a subset.
    ///
    /// `sup(∅)` is the bottom element when one exists, dually for `inf(∅)`.
    pub fn bounds(&self, s: &Subset) -> Result<Bounds, OrderError> {
        self.check_carrier(s)?;
        let mut ub = mask_full(self.len());
        let mut lb = mask_full(self.len());
        for x in s.iter() {
            ub &= self.up[x.0];
            lb &= self.down[x.0];
        }
        let upper_bounds = Subset::from_bits(self.len(), ub);
        let lower_bounds = Subset::from_bits(self.len(), lb);
        Ok(Bounds {
            sup: self.least_of(&upper_bounds),
            inf: self.greatest_of(&lower_bounds),
            upper_bounds,
            lower_bounds,
        })
    }

    pub fn join(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        let ub = Subset::from_bits(self.len(), self.up[x.0] & self.up[y.0]);
        self.least_of(&ub)
    }

    pub fn meet(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        let lb = Subset::from_bits(self.len(), self.down[x.0] & self.down[y.0]);
        self.greatest_of(&lb)
    }

    pub fn bottom(&self) -> Option<ElementId> {
        self.least_of(&self.carrier())
    }

    pub fn top(&self) -> Option<ElementId> {
        self.greatest_of(&self.carrier())
    }

    /// Every pair of members has an upper bound inside the set, and the set is
    /// nonempty.
    pub fn is_directed(&self, s: &Subset) -> bool {
        if s.is_empty() {
            return false;
        }
        for x in s.iter() {
            for y in s.iter() {
                if self.up[x.0] & self.up[y.0] & s.bits() == 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Dual: nonempty and every pair has a lower bound inside the set.
    pub fn is_codirected(&self, s: &Subset) -> bool {
        if s.is_empty() {
            return false;
        }
        for x in s.iter() {
            for y in s.iter() {
                if self.down[x.0] & self.down[y.0] & s.bits() == 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Directed lower set.
    pub fn is_ideal(&self, s: &Subset) -> bool {
        self.is_lower_set(s) && self.is_directed(s)
    }

    /// Codirected upper set.
    pub fn is_filter(&self, s: &Subset) -> bool {
        self.is_upper_set(s) && self.is_codirected(s)
    }

    /// Streams every nonempty directed subset together with its greatest
    /// element. `cap` bounds the number of emitted sets (0 means unbounded).
    ///
    /// Brute-force by design: this is the oracle the cheaper quantifier
    /// reductions elsewhere are validated against.
    pub fn directed_subsets(&self, cap: usize) -> DirectedSubsets<'_> {
        DirectedSubsets {
            poset: self,
            next_mask: 1,
            end: 1u64 << self.len(),
            remaining: if cap == 0 { u64::MAX } else { cap as u64 },
        }
    }

    /// Exhaustively computed structure flags.
    pub fn structure_flags(&self) -> StructureFlags {
        let n = self.len();
        let mut sup_sl = true;
        let mut inf_sl = true;
        for x in 0..n {
            for y in 0..n {
                if self.join(ElementId(x), ElementId(y)).is_none() {
                    sup_sl = false;
                }
                if self.meet(ElementId(x), ElementId(y)).is_none() {
                    inf_sl = false;
                }
            }
        }
        let bottom = self.bottom();
        let top = self.top();
        // Finite directed sets have greatest elements, so a finite poset is
        // always directed-complete; the directed_subsets oracle re-checks this
        // in the test suite.
        let is_dcpo = true;
        // On a finite carrier, pairwise infs fold to infs of every nonempty
        // subset, and a poset with all sups and infs of pairs is complete.
        let is_complete_semilattice = is_dcpo && inf_sl;
        let is_complete_lattice = sup_sl && inf_sl;
        let is_distributive_lattice = sup_sl && inf_sl && self.distributive_triple_law();
        StructureFlags {
            is_dcpo,
            is_sup_semilattice: sup_sl,
            is_inf_semilattice: inf_sl,
            is_complete_semilattice,
            is_complete_lattice,
            is_distributive_lattice,
            bottom,
            top,
        }
    }

    fn distributive_triple_law(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (x, y, z) = (ElementId(x), ElementId(y), ElementId(z));
                    let lhs = self.join(y, z).and_then(|yz| self.meet(x, yz));
                    let xy = self.meet(x, y);
                    let xz = self.meet(x, z);
                    let rhs = match (xy, xz) {
                        (Some(a), Some(b)) => self.join(a, b),
                        _ => None,
                    };
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Prime and co-prime elements of a finite lattice.
    ///
    /// `p` is prime when `p` is the top element or the complement of its down
    /// set is a filter; co-primes are the primes of the order dual.
    pub fn primes_coprimes(&self) -> Result<PrimesCoprimes, OrderError> {
        let flags = self.structure_flags();
        if !flags.is_complete_lattice {
            return Err(OrderError::NotALattice);
        }
        let top = flags.top.expect("finite lattice has a top");
        let bottom = flags.bottom.expect("finite lattice has a bottom");
        let mut prime = Subset::empty(self.len());
        let mut coprime = Subset::empty(self.len());
        for p in self.elements() {
            if p == top || self.is_filter(&self.down_set(p).complement()) {
                prime.insert(p);
            }
            if p == bottom || self.is_ideal(&self.up_set(p).complement()) {
                coprime.insert(p);
            }
        }
        Ok(PrimesCoprimes { prime, coprime })
    }

    /// The order dual, same names.
    pub fn dual(&self) -> FinitePoset {
        FinitePoset {
            names: self.names.clone(),
            up: self.down.clone(),
            down: self.up.clone(),
        }
    }

    /// Induced sub-poset on `s`, elements renumbered in ascending index order.
    pub fn restrict(&self, s: &Subset) -> FinitePoset {
        let kept: Vec<ElementId> = s.iter().collect();
        let names: Vec<String> = kept.iter().map(|&x| self.names[x.0].clone()).collect();
        let n = kept.len();
        let mut up = vec![0u32; n];
        for (i, &x) in kept.iter().enumerate() {
            for (j, &y) in kept.iter().enumerate() {
                if self.leq(x, y) {
                    up[i] |= 1 << j;
                }
            }
        }
        FinitePoset::from_up_masks(names, up)
    }

    /// True when both posets have identical carriers and identical `leq`.
    pub fn same_order(&self, other: &FinitePoset) -> bool {
        self.len() == other.len() && self.up == other.up
    }

    // Small named posets used throughout the test suites and docs.

    /// `e0 < e1 < ... < e{n-1}`.
    pub fn chain(n: usize) -> FinitePoset {
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let mut up = vec![0u32; n];
        for x in 0..n {
            for y in x..n {
                up[x] |= 1 << y;
            }
        }
        FinitePoset::from_up_masks(names, up)
    }

    /// `n` pairwise incomparable elements.
    pub fn antichain(n: usize) -> FinitePoset {
        let names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
        let up = (0..n).map(|i| 1 << i).collect();
        FinitePoset::from_up_masks(names, up)
    }

    /// The four-element lattice `0 < a, b < 1` (the 2x2 Boolean lattice).
    pub fn diamond() -> FinitePoset {
        FinitePoset::from_covers(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
            .expect("static poset")
    }

    /// The five-element non-distributive lattice `0 < a, b, c < 1`.
    pub fn m3() -> FinitePoset {
        FinitePoset::from_covers(
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("0", "b"), ("0", "c"), ("a", "1"), ("b", "1"), ("c", "1")],
        )
        .expect("static poset")
    }

    /// A bottom below two incomparable atoms: `0 < a1, a2`.
    pub fn two_atoms() -> FinitePoset {
        FinitePoset::from_covers(&["0", "a1", "a2"], &[("0", "a1"), ("0", "a2")]).expect("static poset")
    }
}

/// A nonempty directed subset, paired with its greatest element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirectedSubset {
    pub set: Subset,
    pub greatest: ElementId,
}

/// Iterator over all nonempty directed subsets of a finite poset.
pub struct DirectedSubsets<'a> {
    poset: &'a FinitePoset,
    next_mask: u64,
    end: u64,
    remaining: u64,
}

impl Iterator for DirectedSubsets<'_> {
    type Item = DirectedSubset;

    fn next(&mut self) -> Option<DirectedSubset> {
        if self.remaining == 0 {
            return None;
        }
        while self.next_mask < self.end {
            let set = Subset::from_bits(self.poset.len(), self.next_mask as u32);
            self.next_mask += 1;
            if self.poset.is_directed(&set) {
                let greatest = self
                    .poset
                    .greatest_of(&set)
                    .expect("finite directed set has a greatest element");
                self.remaining -= 1;
                return Some(DirectedSubset { set, greatest });
            }
        }
        None
    }
}

fn transitive_close(up: &mut [u32]) {
    let n = up.len();
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            let mut acc = up[x];
            let mut rest = acc;
            while rest != 0 {
                let y = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                acc |= up[y];
            }
            if acc != up[x] {
                up[x] = acc;
                changed = true;
            }
        }
    }
}
