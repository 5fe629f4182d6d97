//! Sequences witnessing that closure points are limits of sequences.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hedgehog::Point;
use crate::rational::{self, Rational};
use crate::sets::classify::closure;
use crate::sets::{HedgehogSet, Interval, TopologyKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Approach {
    FromAbove,
    FromBelow,
}

/// A sequence `k = 1, 2, ...` of points, in closed form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FuSequence {
    /// The target itself, repeated.
    Constant { point: Point },
    /// Heights `anchor + scale/(k+1)` (from above) or `anchor - scale/(k+1)`
    /// (from below) on a single spine.
    OnSpine {
        spine: u64,
        #[serde(with = "rational::serde_str")]
        anchor: Rational,
        approach: Approach,
        #[serde(with = "rational::serde_str")]
        scale: Rational,
    },
    /// A fixed height on the `k`-th spine not listed in `skip`.
    AcrossSpines {
        #[serde(with = "rational::serde_str")]
        height: Rational,
        skip: BTreeSet<u64>,
    },
}

impl FuSequence {
    /// The `k`-th term, `k >= 1`.
    pub fn point(&self, k: u64) -> Point {
        assert!(k >= 1, "sequences are indexed from 1");
        match self {
            FuSequence::Constant { point } => point.clone(),
            FuSequence::OnSpine {
                spine,
                anchor,
                approach,
                scale,
            } => {
                let step = scale / Rational::from_integer(BigInt::from(k + 1));
                let h = match approach {
                    Approach::FromAbove => anchor + step,
                    Approach::FromBelow => anchor - step,
                };
                Point::new(h, *spine).expect("witness heights stay in (0, 1]")
            }
            FuSequence::AcrossSpines { height, skip } => {
                Point::new(height.clone(), nth_free_spine(skip, k)).expect("height in (0, 1]")
            }
        }
    }

    /// Some `K` such that every term from the `K`-th on lies in `set`, or
    /// `None` if infinitely many terms miss it.
    pub fn eventually_inside(&self, set: &HedgehogSet) -> Option<u64> {
        match self {
            FuSequence::Constant { point } => set.member(point).then_some(1),
            FuSequence::OnSpine {
                spine,
                anchor,
                approach,
                scale,
            } => {
                let trace = set.trace(*spine);
                let room = trace.intervals().iter().find_map(|i| match approach {
                    Approach::FromAbove => covers_right_of(i, anchor),
                    Approach::FromBelow => covers_left_of(i, anchor),
                })?;
                // Need scale/(k+1) < room.
                let k = rational::floor_int(&(scale / room));
                Some(k.to_u64().unwrap_or(u64::MAX).max(1))
            }
            FuSequence::AcrossSpines { height, skip } => {
                if !set.default_trace().contains(height) {
                    return None;
                }
                let last_bad = set
                    .exceptions()
                    .iter()
                    .filter(|(s, t)| !skip.contains(s) && !t.contains(height))
                    .map(|(s, _)| *s)
                    .max();
                Some(match last_bad {
                    None => 1,
                    Some(b) => b - skip.range(..=b).count() as u64 + 1,
                })
            }
        }
    }
}

/// Length of the stretch `(a, a + r)` that `i` contains, if any.
fn covers_right_of(i: &Interval, a: &Rational) -> Option<Rational> {
    let starts = *i.lo() < *a || (*i.lo() == *a);
    (starts && *i.hi() > *a).then(|| i.hi() - a)
}

fn covers_left_of(i: &Interval, a: &Rational) -> Option<Rational> {
    let ends = *i.hi() >= *a;
    (ends && *i.lo() < *a).then(|| a - i.lo())
}

/// The `k`-th positive integer (from 1) outside `skip`.
fn nth_free_spine(skip: &BTreeSet<u64>, k: u64) -> u64 {
    let mut candidate = k;
    loop {
        let skipped = skip.range(..=candidate).count() as u64;
        if candidate - skipped == k && !skip.contains(&candidate) {
            return candidate;
        }
        candidate = k + skipped;
    }
}

/// A sequence of points of `a` converging to `x` in `kind`.
pub fn fu_witness(a: &HedgehogSet, x: &Point, kind: TopologyKind) -> Result<FuSequence> {
    if !closure(a, kind).member(x) {
        return Err(Error::NotInClosure);
    }
    if a.member(x) {
        return Ok(FuSequence::Constant { point: x.clone() });
    }
    match x.spine() {
        Some(spine) => {
            let t = x.height();
            for i in a.trace(spine).intervals() {
                let approach = if i.lo() == t {
                    Approach::FromAbove
                } else if i.hi() == t {
                    Approach::FromBelow
                } else {
                    continue;
                };
                return Ok(FuSequence::OnSpine {
                    spine,
                    anchor: t.clone(),
                    approach,
                    scale: (i.hi() - i.lo()).min(Rational::one()),
                });
            }
            Err(Error::NotInClosure)
        }
        None => {
            let from_zero = |t: &crate::sets::IntervalTrace| t.infimum().is_some_and(Zero::is_zero);
            let mut best = a
                .exceptions()
                .iter()
                .filter(|(_, t)| from_zero(t))
                .map(|(s, _)| *s)
                .next();
            if from_zero(a.default_trace()) {
                let d = a.first_default_spine();
                best = Some(best.map_or(d, |b| b.min(d)));
            }
            if let Some(spine) = best {
                let first = &a.trace(spine).intervals()[0];
                return Ok(FuSequence::OnSpine {
                    spine,
                    anchor: Rational::zero(),
                    approach: Approach::FromAbove,
                    scale: first.hi().clone().min(Rational::one()),
                });
            }
            // Only the compact topology gets here: the default is nonempty
            // on infinitely many spines.
            let last = a
                .default_trace()
                .intervals()
                .last()
                .ok_or(Error::NotInClosure)?;
            let height = if last.hi_closed() {
                last.hi().clone()
            } else {
                (last.lo() + last.hi()) / Rational::from_integer(BigInt::from(2))
            };
            Ok(FuSequence::AcrossSpines {
                height,
                skip: a.exceptions().keys().copied().collect(),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hedgehog::SpineUniverse;
    use crate::rational::rat;
    use crate::sets::IntervalTrace;
    use std::collections::BTreeMap;

    const INF: SpineUniverse = SpineUniverse::CountablyInfinite;

    #[test]
    fn apex_from_full_default() {
        let a = HedgehogSet::new(INF, false, IntervalTrace::full(), BTreeMap::new()).unwrap();
        let w = fu_witness(&a, &Point::apex(), TopologyKind::Metric).unwrap();
        for k in 1..6 {
            assert_eq!(w.point(k), Point::new(rat(1, k as i64 + 1), 1).unwrap());
        }
        let ball = HedgehogSet::initial_segment(INF, &rat(1, 10), false).unwrap();
        let k = w.eventually_inside(&ball).unwrap();
        for j in k..k + 20 {
            assert!(ball.member(&w.point(j)));
        }
    }

    #[test]
    fn tops_converge_compactly() {
        let a = HedgehogSet::new(
            INF,
            false,
            IntervalTrace::single(Interval::point(rat(1, 1)).unwrap()),
            BTreeMap::new(),
        )
        .unwrap();
        let w = fu_witness(&a, &Point::apex(), TopologyKind::Compact).unwrap();
        for k in 1..6 {
            assert_eq!(w.point(k), Point::new(rat(1, 1), k).unwrap());
        }
        let nbhd =
            HedgehogSet::without_closed_tails(INF, [(1, rat(1, 2)), (3, rat(1, 4))]).unwrap();
        let k = w.eventually_inside(&nbhd).unwrap();
        assert_eq!(k, 4);
        for j in k..k + 20 {
            assert!(nbhd.member(&w.point(j)));
        }
        assert_eq!(
            fu_witness(&a, &Point::apex(), TopologyKind::Metric),
            Err(Error::NotInClosure)
        );
    }

    #[test]
    fn top_of_open_trace() {
        let a = HedgehogSet::spine_trace(
            INF,
            2,
            IntervalTrace::single(Interval::open(rat(0, 1), rat(1, 1)).unwrap()),
        )
        .unwrap();
        let x = Point::new(rat(1, 1), 2).unwrap();
        let w = fu_witness(&a, &x, TopologyKind::Metric).unwrap();
        for k in 1..6 {
            assert_eq!(
                w.point(k),
                Point::new(rat(k as i64, k as i64 + 1), 2).unwrap()
            );
        }
    }

    #[test]
    fn skipping_spines() {
        let skip = BTreeSet::from([1, 2, 4]);
        let got: Vec<u64> = (1..5).map(|k| nth_free_spine(&skip, k)).collect();
        assert_eq!(got, vec![3, 5, 6, 7]);
    }
}
