use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::Rational;
use crate::sets::{HedgehogSet, IntervalTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyKind {
    Quotient,
    Metric,
    Compact,
}

impl TopologyKind {
    pub const ALL: [TopologyKind; 3] = [
        TopologyKind::Quotient,
        TopologyKind::Metric,
        TopologyKind::Compact,
    ];
}

impl fmt::Display for TopologyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TopologyKind::Quotient => "quotient",
            TopologyKind::Metric => "metric",
            TopologyKind::Compact => "compact",
        })
    }
}

impl std::str::FromStr for TopologyKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "quotient" => Ok(TopologyKind::Quotient),
            "metric" => Ok(TopologyKind::Metric),
            "compact" => Ok(TopologyKind::Compact),
            other => Err(format!("unknown topology {other:?}")),
        }
    }
}

/// Openness of one set in each topology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenVerdict {
    pub quotient: bool,
    pub metric: bool,
    pub compact: bool,
}

impl OpenVerdict {
    pub fn get(&self, kind: TopologyKind) -> bool {
        match kind {
            TopologyKind::Quotient => self.quotient,
            TopologyKind::Metric => self.metric,
            TopologyKind::Compact => self.compact,
        }
    }
}

/// Smallest initial-segment radius over all spines, the uniform radius of
/// a metric ball around the apex inside `a`.
pub fn apex_radius(a: &HedgehogSet) -> Rational {
    a.active_traces()
        .map(IntervalTrace::initial_radius)
        .min()
        .expect("default trace is always active")
}

pub fn classify_open(a: &HedgehogSet) -> OpenVerdict {
    let traces_open = a.active_traces().all(IntervalTrace::is_open);
    let apex_ok = !a.contains_apex() || a.active_traces().all(|t| t.initial_radius().is_positive());
    let quotient = traces_open && apex_ok;
    // Only finitely many distinct traces exist, so the minimum radius is
    // positive exactly when every radius is.
    let metric = quotient && (!a.contains_apex() || apex_radius(a).is_positive());
    let compact =
        quotient && (!a.contains_apex() || a.universe().is_finite() || a.default_trace().is_full());
    OpenVerdict {
        quotient,
        metric,
        compact,
    }
}

pub fn is_open(a: &HedgehogSet, kind: TopologyKind) -> bool {
    classify_open(a).get(kind)
}

/// Whether the apex is a limit of points of `a` in topology `kind`.
fn apex_adherent(a: &HedgehogSet, kind: TopologyKind) -> bool {
    if a.contains_apex() {
        return true;
    }
    let touches_zero = a
        .active_traces()
        .any(|t| t.infimum().is_some_and(Zero::is_zero));
    let spread =
        kind == TopologyKind::Compact && !a.universe().is_finite() && !a.default_trace().is_empty();
    touches_zero || spread
}

pub fn closure(a: &HedgehogSet, kind: TopologyKind) -> HedgehogSet {
    a.map_traces(apex_adherent(a, kind), IntervalTrace::closure)
}

pub fn is_closed(a: &HedgehogSet, kind: TopologyKind) -> bool {
    is_open(&a.complement(), kind)
}

/// Complement of the closure of the complement.
pub fn interior(a: &HedgehogSet, kind: TopologyKind) -> HedgehogSet {
    closure(&a.complement(), kind).complement()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hedgehog::SpineUniverse;
    use crate::rational::rat;
    use crate::sets::Interval;

    const INF: SpineUniverse = SpineUniverse::CountablyInfinite;

    fn verdict(q: bool, m: bool, c: bool) -> OpenVerdict {
        OpenVerdict {
            quotient: q,
            metric: m,
            compact: c,
        }
    }

    #[test]
    fn classify_examples() {
        let seg = HedgehogSet::initial_segment(INF, &rat(1, 3), false).unwrap();
        assert_eq!(classify_open(&seg), verdict(true, true, false));

        let tail = HedgehogSet::tail(INF, 7, &rat(1, 2), false).unwrap();
        assert_eq!(classify_open(&tail), verdict(true, true, true));

        let nbhd = HedgehogSet::initial_segments(
            INF,
            &rat(2, 1),
            false,
            [(1, rat(1, 2)), (2, rat(1, 4)), (3, rat(1, 8))],
        )
        .unwrap();
        assert!(nbhd.default_trace().is_full());
        assert_eq!(classify_open(&nbhd), verdict(true, true, true));
    }

    #[test]
    fn closed_tail_is_not_open() {
        let t = HedgehogSet::tail(INF, 2, &rat(1, 2), true).unwrap();
        assert_eq!(classify_open(&t), verdict(false, false, false));
        assert!(is_closed(&t, TopologyKind::Compact));
    }

    #[test]
    fn closure_examples() {
        let tail = HedgehogSet::tail(INF, 1, &rat(1, 2), false).unwrap();
        assert_eq!(
            closure(&tail, TopologyKind::Metric),
            HedgehogSet::tail(INF, 1, &rat(1, 2), true).unwrap()
        );

        let tops = HedgehogSet::new(
            INF,
            false,
            IntervalTrace::single(Interval::point(rat(1, 1)).unwrap()),
            Default::default(),
        )
        .unwrap();
        let c = closure(&tops, TopologyKind::Compact);
        assert!(c.contains_apex());
        assert_eq!(c.default_trace(), tops.default_trace());
        assert_eq!(closure(&tops, TopologyKind::Quotient), tops);
        assert_eq!(closure(&tops, TopologyKind::Metric), tops);
    }

    #[test]
    fn finite_universe_agrees() {
        let k3 = SpineUniverse::Finite(3);
        let seg = HedgehogSet::initial_segment(k3, &rat(1, 3), false).unwrap();
        assert_eq!(classify_open(&seg), verdict(true, true, true));
        let tops = HedgehogSet::new(
            k3,
            false,
            IntervalTrace::single(Interval::point(rat(1, 1)).unwrap()),
            Default::default(),
        )
        .unwrap();
        assert!(!closure(&tops, TopologyKind::Compact).contains_apex());
    }

    #[test]
    fn interior_of_closed_segment() {
        let seg = HedgehogSet::initial_segment(INF, &rat(1, 3), true).unwrap();
        let open = HedgehogSet::initial_segment(INF, &rat(1, 3), false).unwrap();
        assert_eq!(interior(&seg, TopologyKind::Metric), open);
        // No compact neighborhood of the apex fits inside a uniform segment.
        assert!(!interior(&seg, TopologyKind::Compact).contains_apex());
    }
}
