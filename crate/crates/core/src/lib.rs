// Index loops over relation tables read better than iterator chains here.
#![allow(clippy::needless_range_loop)]

//! Exact checks for order-theoretic structure on finite posets and on
//! finitely presented countable dcpos.
//!
//! The crate has two tiers:
//!
//! * an exact finite tier ([`poset`], [`topology`], [`relations`],
//!   [`classifier`], [`maps`]) where every quantifier is swept over a small
//!   carrier, and
//! * a symbolic tier ([`models`]) where countable dcpos are presented by a
//!   decidable order rule plus a catalog of their non-principal ideals, so
//!   way-below style queries get exact answers on infinite carriers.

pub mod classifier;
pub mod maps;
pub mod models;
pub mod poset;
pub mod relations;
pub mod topology;

pub use poset::{
    Bounds, DirectedSubset, Direction, ElementId, FinitePoset, OrderError, PrimesCoprimes,
    StructureFlags, Subset, MAX_CARRIER,
};
