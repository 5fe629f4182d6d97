//! The hedgehog as the axes of the cube `[0,1]^I`: functions `I -> [0,1]`
//! with at most one nonzero value.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hedgehog::{Point, SpineUniverse};
use crate::rational::{self, Rational};
use crate::sets::{HedgehogSet, Interval, IntervalTrace};

/// A point of the cube with at most one nonzero coordinate. Zero
/// coordinates are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseAxisVector {
    entries: BTreeMap<u64, Rational>,
}

impl SparseAxisVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn new(entries: impl IntoIterator<Item = (u64, Rational)>) -> Result<Self> {
        let mut kept = BTreeMap::new();
        for (axis, value) in entries {
            if value.is_negative() || value > Rational::one() {
                return Err(Error::HeightOutOfRange(rational::format(&value)));
            }
            if axis == 0 {
                return Err(Error::SpineOutOfUniverse {
                    spine: 0,
                    universe: "positive spine indices".into(),
                });
            }
            if !value.is_zero() {
                kept.insert(axis, value);
            }
        }
        if kept.len() > 1 {
            return Err(Error::NotAnAxis);
        }
        Ok(SparseAxisVector { entries: kept })
    }

    pub fn get(&self, axis: u64) -> Rational {
        self.entries
            .get(&axis)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Componentwise order of the cube.
    pub fn leq(&self, other: &Self) -> bool {
        self.entries.iter().all(|(k, v)| *v <= other.get(*k))
    }
}

/// Sends `(t, i)` to the function that is `t` at `i` and `0` elsewhere.
pub fn to_axes(p: &Point) -> SparseAxisVector {
    let mut entries = BTreeMap::new();
    if let Some(i) = p.spine() {
        entries.insert(i, p.height().clone());
    }
    SparseAxisVector { entries }
}

/// Inverse of [`to_axes`].
pub fn from_axes(v: &SparseAxisVector) -> Point {
    match v.entries.iter().next() {
        // Stored entries are nonzero and in (0, 1].
        Some((i, t)) => Point::new(t.clone(), *i).expect("axis vector invariant"),
        None => Point::apex(),
    }
}

/// Distance between the axis vectors of `p` and `q` in the product metric
/// `sum_i |x_i - y_i| / 2^i` of the cube. It induces the compact topology.
pub fn cube_distance(p: &Point, q: &Point) -> Rational {
    let weight = |i: u64| rational::inv_pow2(u32::try_from(i).expect("spine index fits in u32"));
    match (p.spine(), q.spine()) {
        (Some(i), Some(j)) if i == j => (p.height() - q.height()).abs() * weight(i),
        (a, b) => {
            let part =
                |s: Option<u64>, h: &Rational| s.map_or_else(Rational::zero, |i| h * weight(i));
            part(a, p.height()) + part(b, q.height())
        }
    }
}

/// The open ball of radius `eps` about the apex in [`cube_distance`]: on
/// spine `j` the heights below `eps * 2^j`.
pub fn cube_ball_at_apex(universe: SpineUniverse, eps: &Rational) -> Result<HedgehogSet> {
    if !eps.is_positive() {
        return Err(Error::NonPositiveRadius);
    }
    let mut exceptions = BTreeMap::new();
    let mut j = 1u64;
    loop {
        let reach = eps / rational::inv_pow2(j as u32);
        if reach > Rational::one() || !universe.contains_spine(j) {
            break;
        }
        let seg = Interval::clipped(Rational::zero(), reach, false, false).expect("positive reach");
        exceptions.insert(j, IntervalTrace::single(seg));
        j += 1;
    }
    HedgehogSet::new(universe, true, IntervalTrace::full(), exceptions)
}
