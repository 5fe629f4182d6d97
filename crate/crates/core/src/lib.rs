//! Exact computations on hedgehog spaces.
//!
//! A hedgehog is a bundle of unit intervals (spines) glued at 0. This
//! crate represents its points, finitely described subsets and their
//! openness and closure in the quotient, metric and compact topologies,
//! together with embeddings of finite metric spaces and a hedgehog-valued
//! extension operator. All arithmetic is exact.

pub mod embeddings;
pub mod error;
pub mod extension;
pub mod hedgehog;
pub mod metricspace;
pub mod rational;
pub mod report;
pub mod sample;
pub mod sets;

pub use error::{Error, Result};
pub use hedgehog::{Point, SpineUniverse};
pub use rational::Rational;
pub use sets::{HedgehogSet, Interval, IntervalTrace, TopologyKind};
