//! Finitely described subsets of the hedgehog and their topology.

pub mod classify;
pub mod fu;
pub mod refute;
pub mod set;
pub mod subcover;
pub mod trace;

pub use classify::{
    classify_open, closure, interior, is_closed, is_open, OpenVerdict, TopologyKind,
};
pub use fu::{fu_witness, Approach, FuSequence};
pub use refute::refute_countable_base;
pub use set::{BoolOp, HedgehogSet};
pub use subcover::{extract_finite_subcover, Subcover};
pub use trace::{Interval, IntervalTrace};
