//! Finite unions of rational intervals inside `(0, 1]`.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A nonempty interval inside `(0, 1]`. A lower endpoint at 0 is always
/// open.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    /// Fails on endpoints outside `[0, 1]` or an empty interval. A closed
    /// endpoint at 0 is silently opened, since 0 belongs to the apex.
    pub fn new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        let unit = |q: &Rational| *q >= Rational::zero() && *q <= Rational::one();
        if !unit(&lo) || !unit(&hi) {
            return Err(Error::InvalidInterval(format!(
                "endpoints {} and {} must lie in [0, 1]",
                rational::format(&lo),
                rational::format(&hi)
            )));
        }
        Self::clipped(lo, hi, lo_closed, hi_closed)
            .ok_or_else(|| Error::InvalidInterval("interval is empty".into()))
    }

    /// Like [`Interval::new`] but clips to `(0, 1]` and returns `None`
    /// when nothing is left.
    pub fn clipped(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Option<Self> {
        let (lo, lo_closed) = if lo <= Rational::zero() {
            (Rational::zero(), false)
        } else {
            (lo, lo_closed)
        };
        let (hi, hi_closed) = if hi > Rational::one() {
            (Rational::one(), true)
        } else {
            (hi, hi_closed)
        };
        let nonempty = lo < hi || (lo == hi && lo_closed && hi_closed);
        nonempty.then_some(Interval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn open(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, false, false)
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, true, true)
    }

    pub fn open_closed(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, false, true)
    }

    pub fn closed_open(lo: Rational, hi: Rational) -> Result<Self> {
        Self::new(lo, hi, true, false)
    }

    pub fn point(x: Rational) -> Result<Self> {
        Self::new(x.clone(), x, true, true)
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn contains(&self, t: &Rational) -> bool {
        let above = *t > self.lo || (self.lo_closed && *t == self.lo);
        let below = *t < self.hi || (self.hi_closed && *t == self.hi);
        above && below
    }

    fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Less => (other.lo.clone(), other.lo_closed),
            std::cmp::Ordering::Greater => (self.lo.clone(), self.lo_closed),
            std::cmp::Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi.clone(), self.hi_closed),
            std::cmp::Ordering::Greater => (other.hi.clone(), other.hi_closed),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Interval::clipped(lo, hi, lo_closed, hi_closed)
    }

    fn flags(&self) -> &'static str {
        match (self.lo_closed, self.hi_closed) {
            (false, false) => "oo",
            (false, true) => "oc",
            (true, false) => "co",
            (true, true) => "cc",
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            rational::Wire(&self.lo),
            rational::Wire(&self.hi),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// A subset of `(0, 1]` given as sorted, pairwise disjoint, maximally
/// merged intervals. Two traces are equal as sets iff they are equal as
/// values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalTrace {
    intervals: Vec<Interval>,
}

impl IntervalTrace {
    pub fn empty() -> Self {
        Self::default()
    }

    /// All of `(0, 1]`.
    pub fn full() -> Self {
        Self::single(Interval::open_closed(Rational::zero(), Rational::one()).unwrap())
    }

    pub fn single(interval: Interval) -> Self {
        IntervalTrace {
            intervals: vec![interval],
        }
    }

    pub fn from_intervals(intervals: impl IntoIterator<Item = Interval>) -> Self {
        let mut all: Vec<Interval> = intervals.into_iter().collect();
        all.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut merged: Vec<Interval> = Vec::with_capacity(all.len());
        for next in all {
            if let Some(cur) = merged.last_mut() {
                let touches =
                    next.lo < cur.hi || (next.lo == cur.hi && (cur.hi_closed || next.lo_closed));
                if touches {
                    if next.hi > cur.hi {
                        cur.hi = next.hi;
                        cur.hi_closed = next.hi_closed;
                    } else if next.hi == cur.hi {
                        cur.hi_closed |= next.hi_closed;
                    }
                    continue;
                }
            }
            merged.push(next);
        }
        IntervalTrace { intervals: merged }
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full()
    }

    pub fn contains(&self, t: &Rational) -> bool {
        self.intervals.iter().any(|i| i.contains(t))
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_intervals(self.intervals.iter().chain(&other.intervals).cloned())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.intervals {
            for b in &other.intervals {
                out.extend(a.intersect(b));
            }
        }
        Self::from_intervals(out)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersection(&other.complement())
    }

    /// Complement within `(0, 1]`.
    pub fn complement(&self) -> Self {
        let mut out = Vec::new();
        let mut start = Rational::zero();
        let mut start_closed = false;
        for i in &self.intervals {
            out.extend(Interval::clipped(
                start,
                i.lo.clone(),
                start_closed,
                !i.lo_closed,
            ));
            start = i.hi.clone();
            start_closed = !i.hi_closed;
        }
        out.extend(Interval::clipped(
            start,
            Rational::one(),
            start_closed,
            true,
        ));
        Self::from_intervals(out)
    }

    /// Open as a subset of `(0, 1]`; a closed endpoint at 1 is allowed.
    pub fn is_open(&self) -> bool {
        self.intervals
            .iter()
            .all(|i| !i.lo_closed && (!i.hi_closed || i.hi.is_one()))
    }

    /// Closed as a subset of `(0, 1]`; an open endpoint at 0 is allowed.
    pub fn is_closed(&self) -> bool {
        self.intervals
            .iter()
            .all(|i| (i.lo_closed || i.lo.is_zero()) && i.hi_closed)
    }

    /// Closure within `(0, 1]`.
    pub fn closure(&self) -> Self {
        Self::from_intervals(self.intervals.iter().map(|i| Interval {
            lo: i.lo.clone(),
            hi: i.hi.clone(),
            lo_closed: !i.lo.is_zero(),
            hi_closed: true,
        }))
    }

    /// Greatest lower bound of the trace, `None` when empty.
    pub fn infimum(&self) -> Option<&Rational> {
        self.intervals.first().map(|i| &i.lo)
    }

    /// Largest `r` with `(0, r)` inside the trace, or 0 when there is none.
    pub fn initial_radius(&self) -> Rational {
        match self.intervals.first() {
            Some(i) if i.lo.is_zero() => i.hi.clone(),
            _ => Rational::zero(),
        }
    }

    /// Every endpoint, lowest first.
    pub fn endpoints(&self) -> impl Iterator<Item = &Rational> {
        self.intervals.iter().flat_map(|i| [&i.lo, &i.hi])
    }
}

impl fmt::Display for IntervalTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        for (k, i) in self.intervals.iter().enumerate() {
            if k > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

// Wire form: [["lo", "hi", "oc"], ...].
impl Serialize for IntervalTrace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<[String; 3]> = self
            .intervals
            .iter()
            .map(|i| {
                [
                    rational::format(&i.lo),
                    rational::format(&i.hi),
                    i.flags().to_string(),
                ]
            })
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntervalTrace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let rows = Vec::<[String; 3]>::deserialize(d)?;
        let mut out = Vec::with_capacity(rows.len());
        for [lo, hi, flags] in rows {
            let lo = rational::parse(&lo).map_err(D::Error::custom)?;
            let hi = rational::parse(&hi).map_err(D::Error::custom)?;
            let (lc, hc) = match flags.as_str() {
                "oo" => (false, false),
                "oc" => (false, true),
                "co" => (true, false),
                "cc" => (true, true),
                other => {
                    return Err(D::Error::custom(format!(
                        "interval flags must be one of oo, oc, co, cc; got {other:?}"
                    )))
                }
            };
            out.push(Interval::new(lo, hi, lc, hc).map_err(D::Error::custom)?);
        }
        Ok(Self::from_intervals(out))
    }
}
