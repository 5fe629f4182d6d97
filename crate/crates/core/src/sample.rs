//! Seeded random instances for property checks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::hedgehog::{ball, BallKind, Point, SpineUniverse};
use crate::metricspace::{DistanceTable, FiniteMetricSpace, PointSet};
use crate::rational::Rational;
use crate::sets::{HedgehogSet, Interval, IntervalTrace, TopologyKind};

const MIXED: &[i64] = &[1, 2, 3, 4, 5, 6, 8, 12, 16, 64];
const DYADIC: &[i64] = &[1, 2, 4, 8, 16, 32, 64];

/// Spines used for exceptions; an infinite universe also has unlisted ones.
const SPINE_SPREAD: u64 = 6;

pub struct Sampler {
    rng: ChaCha8Rng,
    denominators: &'static [i64],
}

impl Sampler {
    /// Heights with small mixed denominators.
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            denominators: MIXED,
        }
    }

    /// Heights on the grid `k/64`.
    pub fn dyadic(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            denominators: DYADIC,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.rng.gen_range(0..n)
    }

    /// A rational in `[0, 1]`.
    pub fn unit(&mut self) -> Rational {
        let d = *self.denominators.choose(&mut self.rng).unwrap();
        let k = self.rng.gen_range(0..=d);
        Rational::new(BigInt::from(k), BigInt::from(d))
    }

    /// A rational in `(0, 1]`.
    pub fn unit_positive(&mut self) -> Rational {
        loop {
            let q = self.unit();
            if q > Rational::from_integer(0.into()) {
                return q;
            }
        }
    }

    /// A rational in `[lo, hi]` with denominator at most 64.
    pub fn rational_in(&mut self, lo: i64, hi: i64) -> Rational {
        let d = *self.denominators.choose(&mut self.rng).unwrap();
        let k = self.rng.gen_range(lo * d..=hi * d);
        Rational::new(BigInt::from(k), BigInt::from(d))
    }

    pub fn spine(&mut self, universe: SpineUniverse) -> u64 {
        let top = match universe {
            SpineUniverse::Finite(k) => k,
            SpineUniverse::CountablyInfinite => SPINE_SPREAD + 2,
        };
        self.rng.gen_range(1..=top)
    }

    pub fn point(&mut self, universe: SpineUniverse) -> Point {
        let s = self.spine(universe);
        Point::new(self.unit(), s).expect("unit height")
    }

    pub fn point_on(&mut self, spines: &[u64]) -> Point {
        let s = *spines.choose(&mut self.rng).unwrap();
        Point::new(self.unit(), s).expect("unit height")
    }

    pub fn interval(&mut self) -> Interval {
        loop {
            let (a, b) = (self.unit(), self.unit());
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let (lc, hc) = (self.chance(0.5), self.chance(0.5));
            if let Some(i) = Interval::clipped(lo, hi, lc, hc) {
                return i;
            }
        }
    }

    pub fn trace(&mut self) -> IntervalTrace {
        let n = self.rng.gen_range(0..=3);
        IntervalTrace::from_intervals((0..n).map(|_| self.interval()))
    }

    /// Any set: random apex flag, default and up to three exceptions.
    pub fn set(&mut self, universe: SpineUniverse) -> HedgehogSet {
        let apex = self.chance(0.5);
        let default = self.trace();
        let mut exceptions = BTreeMap::new();
        for _ in 0..self.rng.gen_range(0..=3) {
            let s = self.exception_spine(universe);
            exceptions.insert(s, self.trace());
        }
        HedgehogSet::new(universe, apex, default, exceptions).expect("spines in range")
    }

    fn exception_spine(&mut self, universe: SpineUniverse) -> u64 {
        match universe {
            SpineUniverse::Finite(k) => self.rng.gen_range(1..=k),
            SpineUniverse::CountablyInfinite => self.rng.gen_range(1..=SPINE_SPREAD),
        }
    }

    fn open_interval_trace(&mut self) -> IntervalTrace {
        let i = self.interval();
        let top = *i.hi() == Rational::from_integer(1.into()) && self.chance(0.5);
        IntervalTrace::from_intervals(Interval::clipped(
            i.lo().clone(),
            i.hi().clone(),
            false,
            top,
        ))
    }

    /// A generator of the subbase of topology `kind`.
    pub fn generator(&mut self, universe: SpineUniverse, kind: TopologyKind) -> HedgehogSet {
        let spine = self.exception_spine(universe);
        let choice = self.rng.gen_range(0..3);
        match (kind, choice) {
            (_, 0) => {
                let t = self.unit();
                let closed = false;
                if t == Rational::from_integer(1.into()) {
                    return HedgehogSet::empty(universe);
                }
                HedgehogSet::tail(universe, spine, &t, closed).expect("valid tail")
            }
            (_, 1) => {
                let tr = self.open_interval_trace();
                HedgehogSet::spine_trace(universe, spine, tr).expect("valid spine")
            }
            (TopologyKind::Metric, _) => {
                let r = self.unit_positive();
                HedgehogSet::initial_segment(universe, &r, false).expect("positive radius")
            }
            (TopologyKind::Quotient, _) => self.apex_neighborhood(universe, TopologyKind::Quotient),
            (TopologyKind::Compact, _) => self.apex_neighborhood(universe, TopologyKind::Compact),
        }
    }

    /// A finite union of finite intersections of generators of `kind`.
    pub fn open_set(&mut self, universe: SpineUniverse, kind: TopologyKind) -> HedgehogSet {
        let mut acc = HedgehogSet::empty(universe);
        for _ in 0..self.rng.gen_range(1..=3) {
            let mut term = self.generator(universe, kind);
            if self.chance(0.3) {
                term = term.intersection(&self.generator(universe, kind)).unwrap();
            }
            acc = acc.union(&term).unwrap();
        }
        acc
    }

    /// A basic neighborhood of the apex in `kind`.
    pub fn apex_neighborhood(
        &mut self,
        universe: SpineUniverse,
        kind: TopologyKind,
    ) -> HedgehogSet {
        let count = self.rng.gen_range(0..=3);
        let spines: Vec<u64> = (0..count).map(|_| self.exception_spine(universe)).collect();
        match kind {
            TopologyKind::Metric => {
                let r = self.unit_positive();
                HedgehogSet::initial_segment(universe, &r, false).unwrap()
            }
            TopologyKind::Quotient => {
                let r = self.unit_positive();
                let radii: Vec<(u64, Rational)> = spines
                    .into_iter()
                    .map(|s| (s, self.unit_positive()))
                    .collect();
                HedgehogSet::initial_segments(universe, &r, false, radii).unwrap()
            }
            TopologyKind::Compact => {
                let tails: Vec<(u64, Rational)> = spines
                    .into_iter()
                    .map(|s| (s, self.unit_positive()))
                    .collect();
                HedgehogSet::without_closed_tails(universe, tails).unwrap()
            }
        }
    }

    /// A basic neighborhood of `x` in `kind`.
    pub fn neighborhood(
        &mut self,
        x: &Point,
        universe: SpineUniverse,
        kind: TopologyKind,
    ) -> HedgehogSet {
        if x.is_apex() {
            return self.apex_neighborhood(universe, kind);
        }
        // A radius below the height keeps the ball off the apex, where the
        // three topologies agree.
        let r = x.height() * self.unit_positive() / Rational::from_integer(2.into());
        ball(x, &r, BallKind::Open, universe).unwrap()
    }

    /// Shortest-path metric of a complete graph with random edge weights in
    /// `(0, 2]`.
    pub fn metric_space(&mut self, n: usize) -> FiniteMetricSpace {
        let mut d = vec![vec![Rational::from_integer(0.into()); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let w = Rational::new(BigInt::from(self.rng.gen_range(1..=16)), BigInt::from(8));
                d[i][j] = w.clone();
                d[j][i] = w;
            }
        }
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let via = &d[i][k] + &d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                    }
                }
            }
        }
        FiniteMetricSpace::new(DistanceTable {
            labels: (0..n).map(|i| format!("p{i}")).collect(),
            dist: d,
        })
        .expect("shortest paths form a metric")
    }

    pub fn subset(&mut self, n: usize, p: f64) -> PointSet {
        (0..n).filter(|_| self.rng.gen_bool(p)).collect()
    }

    /// Between one and four sets covering `0..n`.
    pub fn cover(&mut self, n: usize) -> Vec<PointSet> {
        let k = self.rng.gen_range(1..=4);
        let mut sets: Vec<PointSet> = (0..k).map(|_| self.subset(n, 0.3)).collect();
        for x in 0..n {
            let i = self.rng.gen_range(0..k);
            sets[i].insert(x);
        }
        sets
    }

    /// Pairwise disjoint sets, some possibly empty.
    pub fn disjoint_family(&mut self, n: usize, members: usize) -> Vec<PointSet> {
        let mut fam = vec![PointSet::new(); members];
        for x in 0..n {
            let slot = self.rng.gen_range(0..=members);
            if slot < members {
                fam[slot].insert(x);
            }
        }
        fam
    }

    /// Compact-open sets whose union is the whole hedgehog, in random order:
    /// one apex neighborhood, open pieces chaining over each of its missing
    /// tails, and some unrelated open sets.
    pub fn covering_stream(&mut self, universe: SpineUniverse) -> Vec<HedgehogSet> {
        let one = Rational::from_integer(1.into());
        let base = self.apex_neighborhood(universe, TopologyKind::Compact);
        let mut out = vec![base.clone()];
        let missing = base.complement();
        let mut spines: Vec<u64> = missing.exceptions().keys().copied().collect();
        if !missing.default_trace().is_empty() {
            spines.extend(
                (1..=match universe {
                    SpineUniverse::Finite(k) => k,
                    SpineUniverse::CountablyInfinite => 0,
                })
                    .filter(|s| !missing.exceptions().contains_key(s)),
            );
        }
        for s in spines {
            let Some(first) = missing.trace(s).intervals().first() else {
                continue;
            };
            // Overlapping open pieces from below the tail up to 1.
            let mut lo = first.lo() / Rational::from_integer(2.into());
            loop {
                let step = self.unit_positive() / Rational::from_integer(2.into());
                let hi = &lo + &step + Rational::new(1.into(), 64.into());
                if hi >= one {
                    let t = IntervalTrace::single(Interval::open_closed(lo, one.clone()).unwrap());
                    out.push(HedgehogSet::spine_trace(universe, s, t).unwrap());
                    break;
                }
                let t = IntervalTrace::single(Interval::open(lo.clone(), hi.clone()).unwrap());
                out.push(HedgehogSet::spine_trace(universe, s, t).unwrap());
                lo = (&lo + &hi) / Rational::from_integer(2.into());
            }
        }
        for _ in 0..self.rng.gen_range(0..=3) {
            let noise = self.generator(universe, TopologyKind::Compact);
            out.push(noise);
        }
        out.shuffle(&mut self.rng);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metricspace::validate_metric;
    use crate::sets::classify_open;

    #[test]
    fn generated_spaces_are_metrics() {
        let mut s = Sampler::new(1);
        for n in 1..10 {
            assert!(validate_metric(&s.metric_space(n).table()).valid);
        }
    }

    #[test]
    fn open_sets_are_open() {
        let mut s = Sampler::new(2);
        for kind in TopologyKind::ALL {
            for _ in 0..50 {
                let u = s.open_set(SpineUniverse::CountablyInfinite, kind);
                assert!(classify_open(&u).get(kind), "{u} in {kind}");
            }
        }
    }

    #[test]
    fn streams_cover() {
        let mut s = Sampler::new(3);
        for _ in 0..20 {
            let stream = s.covering_stream(SpineUniverse::CountablyInfinite);
            let mut u = HedgehogSet::empty(SpineUniverse::CountablyInfinite);
            for x in &stream {
                assert!(classify_open(x).compact);
                u = u.union(x).unwrap();
            }
            assert_eq!(u, HedgehogSet::full(SpineUniverse::CountablyInfinite));
        }
    }
}
