// Index loops over relation tables read better than iterator chains here.
#![allow(clippy::needless_range_loop)]

//! Harness around the core checkers: the poset file format, report emission,
//! poset generators, and the suite drivers behind the `domcheck` binary.

pub mod doc;
pub mod emit;
pub mod gen;
pub mod suite;

pub use doc::{parse_poset_text, ParseError, PosetDocument};
pub use emit::{emit_poset, emit_report, emit_topology, input_digest, EmitFormat, RunReport};
pub use gen::{enumerate_labeled_posets, random_poset, GenError, Shape};
pub use suite::{run_suite, Defect, SuiteSpec};
