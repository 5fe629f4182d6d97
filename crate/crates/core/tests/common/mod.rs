#![allow(dead_code)]

use std::collections::BTreeMap;

use hedgehog::hedgehog::distance;
use hedgehog::rational::rat;
use hedgehog::{HedgehogSet, Interval, IntervalTrace, Point, Rational, SpineUniverse};
use proptest::prelude::*;

pub const INF: SpineUniverse = SpineUniverse::CountablyInfinite;

/// Heights with small denominators, 0 and 1 included.
pub fn unit() -> BoxedStrategy<Rational> {
    prop_oneof![Just(1i64), 2..=6i64, Just(8), Just(12), Just(16), Just(64)]
        .prop_flat_map(|d| (0..=d).prop_map(move |k| rat(k, d)))
        .boxed()
}

/// Heights on the grid `k/64`.
pub fn dyadic() -> BoxedStrategy<Rational> {
    (0..=64i64).prop_map(|k| rat(k, 64)).boxed()
}

pub fn universe() -> impl Strategy<Value = SpineUniverse> {
    prop_oneof![Just(INF), (1..=8u64).prop_map(SpineUniverse::Finite)]
}

pub fn spine_range(u: SpineUniverse) -> u64 {
    match u {
        SpineUniverse::Finite(k) => k,
        SpineUniverse::CountablyInfinite => 6,
    }
}

pub fn point_in(u: SpineUniverse) -> impl Strategy<Value = Point> {
    (unit(), 1..=spine_range(u) + u64::from(!u.is_finite()) * 2)
        .prop_map(|(h, s)| Point::new(h, s).unwrap())
}

pub fn point() -> impl Strategy<Value = Point> {
    point_in(INF)
}

fn interval_from(h: BoxedStrategy<Rational>) -> BoxedStrategy<Interval> {
    (h.clone(), h, any::<bool>(), any::<bool>())
        .prop_filter_map("empty interval", |(a, b, lc, hc)| {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            Interval::clipped(lo, hi, lc, hc)
        })
        .boxed()
}

pub fn interval() -> BoxedStrategy<Interval> {
    interval_from(unit())
}

pub fn trace() -> BoxedStrategy<IntervalTrace> {
    prop::collection::vec(interval(), 0..=3)
        .prop_map(IntervalTrace::from_intervals)
        .boxed()
}

pub fn dyadic_trace() -> BoxedStrategy<IntervalTrace> {
    prop::collection::vec(interval_from(dyadic()), 0..=3)
        .prop_map(IntervalTrace::from_intervals)
        .boxed()
}

fn set_from(u: SpineUniverse, tr: BoxedStrategy<IntervalTrace>) -> BoxedStrategy<HedgehogSet> {
    (
        any::<bool>(),
        tr.clone(),
        prop::collection::btree_map(1..=spine_range(u), tr, 0..=3),
    )
        .prop_map(move |(apex, d, ex)| HedgehogSet::new(u, apex, d, ex).unwrap())
        .boxed()
}

pub fn set_in(u: SpineUniverse) -> BoxedStrategy<HedgehogSet> {
    set_from(u, trace())
}

pub fn dyadic_set_in(u: SpineUniverse) -> BoxedStrategy<HedgehogSet> {
    set_from(u, dyadic_trace())
}

pub fn set() -> impl Strategy<Value = HedgehogSet> {
    universe().prop_flat_map(set_in)
}

pub fn two_sets() -> impl Strategy<Value = (HedgehogSet, HedgehogSet)> {
    universe().prop_flat_map(|u| (set_in(u), set_in(u)))
}

/// Points at every endpoint, every midpoint between consecutive endpoints
/// and 1, on every spine that can distinguish the sets.
pub fn refinement_grid(sets: &[&HedgehogSet]) -> Vec<Point> {
    let mut heights = HedgehogSet::probe_heights(sets.iter().copied());
    heights.push(Rational::from_integer(1.into()));
    heights.sort();
    heights.dedup();
    let mut all = heights.clone();
    for w in heights.windows(2) {
        all.push((&w[0] + &w[1]) / Rational::from_integer(2.into()));
    }
    let mut out = vec![Point::apex()];
    for s in HedgehogSet::probe_spines(sets.iter().copied()) {
        for h in &all {
            if let Ok(p) = Point::new(h.clone(), s) {
                if !p.is_apex() {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Metric closure of a set with endpoints on `k/64`, decided on the grid
/// `k/64`: a grid point is adherent iff the set meets the grid `k/128`
/// within distance `1/128` of it.
pub fn grid_closure_member(a: &HedgehogSet, q: &Point) -> bool {
    let step = rat(1, 128);
    // Only grid points with index within one of q's can be that close.
    let center = hedgehog::rational::floor_int(&(q.height() * rat(128, 1)))
        .try_into()
        .unwrap_or(0i64);
    let mut near = vec![Point::apex()];
    for s in HedgehogSet::probe_spines([a]) {
        let ks = if q.spine() == Some(s) {
            (center - 1).max(1)..=(center + 1).min(128)
        } else if q.is_apex() {
            1..=1
        } else {
            continue;
        };
        near.extend(ks.map(|k| Point::new(rat(k, 128), s).unwrap()));
    }
    near.iter().any(|p| distance(p, q) <= step && a.member(p))
}

pub fn grid_points(a: &HedgehogSet) -> Vec<Point> {
    let mut out = vec![Point::apex()];
    for s in HedgehogSet::probe_spines([a]) {
        for k in 1..=64 {
            out.push(Point::new(rat(k, 64), s).unwrap());
        }
    }
    out
}

pub fn exceptions_of(a: &HedgehogSet) -> BTreeMap<u64, IntervalTrace> {
    a.exceptions().clone()
}
