use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hedgehog::{Point, SpineUniverse};
use crate::rational::Rational;
use crate::sets::trace::{Interval, IntervalTrace};

/// A finitely described subset of the hedgehog: an apex flag, a default
/// trace shared by every unlisted spine, and finitely many exceptional
/// spines.
///
/// Values are kept canonical, so `==` is set equality. In an infinite
/// universe an exception never repeats the default. In `Finite(k)` the
/// default is the most common trace among the `k` spines (ties broken by
/// the smaller trace), and exactly the spines that differ from it are
/// listed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HedgehogSet {
    universe: SpineUniverse,
    apex: bool,
    default: IntervalTrace,
    exceptions: BTreeMap<u64, IntervalTrace>,
}

impl HedgehogSet {
    pub fn new(
        universe: SpineUniverse,
        apex: bool,
        default: IntervalTrace,
        exceptions: BTreeMap<u64, IntervalTrace>,
    ) -> Result<Self> {
        for &spine in exceptions.keys() {
            universe.check_spine(spine)?;
        }
        Ok(Self::canonical(universe, apex, default, exceptions))
    }

    fn canonical(
        universe: SpineUniverse,
        apex: bool,
        default: IntervalTrace,
        mut exceptions: BTreeMap<u64, IntervalTrace>,
    ) -> Self {
        let default = match universe {
            SpineUniverse::CountablyInfinite => default,
            SpineUniverse::Finite(k) => {
                let unlisted = k - exceptions.len() as u64;
                let mut counts: BTreeMap<&IntervalTrace, u64> = BTreeMap::new();
                if unlisted > 0 {
                    counts.insert(&default, unlisted);
                }
                for t in exceptions.values() {
                    *counts.entry(t).or_default() += 1;
                }
                // BTreeMap iterates in ascending trace order, so the first
                // maximum is the smallest trace among the most common.
                let mut mode = None;
                for (t, c) in counts {
                    if mode.is_none_or(|(_, best)| c > best) {
                        mode = Some((t, c));
                    }
                }
                let mode = mode.map(|(t, _)| t.clone()).unwrap_or(default.clone());
                if mode != default && unlisted > 0 {
                    for spine in 1..=k {
                        exceptions.entry(spine).or_insert_with(|| default.clone());
                    }
                }
                mode
            }
        };
        exceptions.retain(|_, t| *t != default);
        HedgehogSet {
            universe,
            apex,
            default,
            exceptions,
        }
    }

    pub fn empty(universe: SpineUniverse) -> Self {
        Self::canonical(universe, false, IntervalTrace::empty(), BTreeMap::new())
    }

    /// The whole hedgehog.
    pub fn full(universe: SpineUniverse) -> Self {
        Self::canonical(universe, true, IntervalTrace::full(), BTreeMap::new())
    }

    pub fn apex_only(universe: SpineUniverse) -> Self {
        Self::canonical(universe, true, IntervalTrace::empty(), BTreeMap::new())
    }

    /// `p([0, r) x I)`, or `p([0, r] x I)` when `closed`.
    pub fn initial_segment(universe: SpineUniverse, r: &Rational, closed: bool) -> Result<Self> {
        Self::initial_segments(universe, r, closed, [])
    }

    /// The apex together with `(0, r_i)` on each listed spine and
    /// `(0, default_r)` elsewhere (closed at the top when `closed`).
    pub fn initial_segments(
        universe: SpineUniverse,
        default_r: &Rational,
        closed: bool,
        radii: impl IntoIterator<Item = (u64, Rational)>,
    ) -> Result<Self> {
        let seg = |r: &Rational| -> Result<IntervalTrace> {
            if *r <= Rational::zero() {
                return Err(Error::NonPositiveRadius);
            }
            Ok(IntervalTrace::from_intervals(Interval::clipped(
                Rational::zero(),
                r.clone(),
                false,
                closed || *r > Rational::one(),
            )))
        };
        let default = seg(default_r)?;
        let mut exceptions = BTreeMap::new();
        for (spine, r) in radii {
            exceptions.insert(spine, seg(&r)?);
        }
        Self::new(universe, true, default, exceptions)
    }

    /// `p((t, 1] x {spine})`, or `p([t, 1] x {spine})` when `closed`.
    pub fn tail(universe: SpineUniverse, spine: u64, t: &Rational, closed: bool) -> Result<Self> {
        let interval = Interval::new(t.clone(), Rational::one(), closed, true)?;
        Self::spine_trace(universe, spine, IntervalTrace::single(interval))
    }

    /// The given trace on one spine and nothing elsewhere.
    pub fn spine_trace(universe: SpineUniverse, spine: u64, trace: IntervalTrace) -> Result<Self> {
        Self::new(
            universe,
            false,
            IntervalTrace::empty(),
            BTreeMap::from([(spine, trace)]),
        )
    }

    /// `J` minus the closed tails `p([t_j, 1] x {j})`.
    pub fn without_closed_tails(
        universe: SpineUniverse,
        tails: impl IntoIterator<Item = (u64, Rational)>,
    ) -> Result<Self> {
        let mut exceptions: BTreeMap<u64, IntervalTrace> = BTreeMap::new();
        for (spine, t) in tails {
            let cut = IntervalTrace::from_intervals(Interval::clipped(
                Rational::zero(),
                t.clone(),
                false,
                false,
            ));
            if t <= Rational::zero() {
                return Err(Error::InvalidInterval(
                    "a removed tail must start above 0".into(),
                ));
            }
            let entry = exceptions.entry(spine).or_insert_with(IntervalTrace::full);
            *entry = entry.intersection(&cut);
        }
        Self::new(universe, true, IntervalTrace::full(), exceptions)
    }

    pub fn universe(&self) -> SpineUniverse {
        self.universe
    }

    pub fn contains_apex(&self) -> bool {
        self.apex
    }

    pub fn default_trace(&self) -> &IntervalTrace {
        &self.default
    }

    pub fn exceptions(&self) -> &BTreeMap<u64, IntervalTrace> {
        &self.exceptions
    }

    /// The trace on `spine`.
    pub fn trace(&self, spine: u64) -> &IntervalTrace {
        self.exceptions.get(&spine).unwrap_or(&self.default)
    }

    /// Every trace that some spine actually carries. The default always
    /// counts: canonical form guarantees at least one spine uses it.
    pub fn active_traces(&self) -> impl Iterator<Item = &IntervalTrace> {
        std::iter::once(&self.default).chain(self.exceptions.values())
    }

    /// The least spine carrying the default trace.
    pub fn first_default_spine(&self) -> u64 {
        (1..)
            .find(|s| !self.exceptions.contains_key(s))
            .expect("some spine carries the default")
    }

    pub fn member(&self, p: &Point) -> bool {
        match p.spine() {
            None => self.apex,
            Some(i) => self.trace(i).contains(p.height()),
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.apex && self.active_traces().all(IntervalTrace::is_empty)
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a || b, IntervalTrace::union)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && b, IntervalTrace::intersection)
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a && !b, IntervalTrace::difference)
    }

    pub fn boolean_op(&self, op: BoolOp, other: &Self) -> Result<Self> {
        match op {
            BoolOp::Union => self.union(other),
            BoolOp::Intersection => self.intersection(other),
            BoolOp::Difference => self.difference(other),
        }
    }

    pub fn complement(&self) -> Self {
        Self::canonical(
            self.universe,
            !self.apex,
            self.default.complement(),
            self.exceptions
                .iter()
                .map(|(k, t)| (*k, t.complement()))
                .collect(),
        )
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.difference(other)?.is_empty())
    }

    /// Applies `f` to every trace and keeps the apex flag `apex`.
    pub fn map_traces(&self, apex: bool, f: impl Fn(&IntervalTrace) -> IntervalTrace) -> Self {
        Self::canonical(
            self.universe,
            apex,
            f(&self.default),
            self.exceptions.iter().map(|(k, t)| (*k, f(t))).collect(),
        )
    }

    fn combine(
        &self,
        other: &Self,
        flag: impl Fn(bool, bool) -> bool,
        trace: impl Fn(&IntervalTrace, &IntervalTrace) -> IntervalTrace,
    ) -> Result<Self> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch);
        }
        let spines: BTreeSet<u64> = self
            .exceptions
            .keys()
            .chain(other.exceptions.keys())
            .copied()
            .collect();
        let exceptions = spines
            .into_iter()
            .map(|s| (s, trace(self.trace(s), other.trace(s))))
            .collect();
        Ok(Self::canonical(
            self.universe,
            flag(self.apex, other.apex),
            trace(&self.default, &other.default),
            exceptions,
        ))
    }

    /// Spines worth probing when comparing sets by membership: every
    /// listed spine plus one spine that carries each default.
    pub fn probe_spines<'a>(sets: impl IntoIterator<Item = &'a HedgehogSet>) -> Vec<u64> {
        let sets: Vec<&HedgehogSet> = sets.into_iter().collect();
        let mut spines: BTreeSet<u64> = sets
            .iter()
            .flat_map(|s| s.exceptions.keys().copied())
            .collect();
        let fresh = (1..).find(|s| !spines.contains(s)).unwrap_or(1);
        if sets.iter().all(|s| s.universe.contains_spine(fresh)) {
            spines.insert(fresh);
        }
        spines.into_iter().collect()
    }

    /// Heights that decide equality of traces built from the endpoints of
    /// `sets`: every endpoint and every midpoint between neighbors.
    pub fn probe_heights<'a>(sets: impl IntoIterator<Item = &'a HedgehogSet>) -> Vec<Rational> {
        let mut ends: BTreeSet<Rational> = BTreeSet::from([Rational::zero(), Rational::one()]);
        for s in sets {
            for t in s.active_traces() {
                ends.extend(t.endpoints().cloned());
            }
        }
        let ends: Vec<Rational> = ends.into_iter().collect();
        let mut out = Vec::with_capacity(2 * ends.len());
        for w in ends.windows(2) {
            out.push(w[0].clone());
            out.push((&w[0] + &w[1]) / Rational::from_integer(2.into()));
        }
        out.push(Rational::one());
        out.retain(|h| !h.is_zero());
        out
    }
}

/// The three Boolean operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoolOp {
    Union,
    Intersection,
    Difference,
}

impl BoolOp {
    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            BoolOp::Union => a || b,
            BoolOp::Intersection => a && b,
            BoolOp::Difference => a && !b,
        }
    }
}

impl fmt::Display for HedgehogSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{apex: {}, default: {}", self.apex, self.default)?;
        for (k, t) in &self.exceptions {
            write!(f, ", {k}: {t}")?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SetWire {
    universe: SpineUniverse,
    #[serde(default)]
    apex: bool,
    #[serde(default)]
    default: IntervalTrace,
    #[serde(default)]
    exceptions: BTreeMap<u64, IntervalTrace>,
}

impl Serialize for HedgehogSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SetWire {
            universe: self.universe,
            apex: self.apex,
            default: self.default.clone(),
            exceptions: self.exceptions.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HedgehogSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = SetWire::deserialize(d)?;
        HedgehogSet::new(w.universe, w.apex, w.default, w.exceptions)
            .map_err(serde::de::Error::custom)
    }
}
