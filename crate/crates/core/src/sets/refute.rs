use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::hedgehog::SpineUniverse;
use crate::rational::Rational;
use crate::sets::classify::classify_open;
use crate::sets::{HedgehogSet, Interval, IntervalTrace};

/// Given quotient-open neighborhoods `U_1, ..., U_N` of the apex, builds a
/// quotient-open neighborhood of the apex containing none of them: on
/// spine `n` it keeps only half of `U_n`'s initial segment there.
pub fn refute_countable_base(candidates: &[HedgehogSet]) -> Result<HedgehogSet> {
    let universe = SpineUniverse::CountablyInfinite;
    let mut exceptions = BTreeMap::new();
    for (idx, c) in candidates.iter().enumerate() {
        if c.universe() != universe {
            return Err(Error::PreconditionViolated(format!(
                "candidate {idx} lives in universe {}, not inf",
                c.universe()
            )));
        }
        if !c.contains_apex() {
            return Err(Error::PreconditionViolated(format!(
                "candidate {idx} does not contain the apex"
            )));
        }
        if !classify_open(c).quotient {
            return Err(Error::PreconditionViolated(format!(
                "candidate {idx} is not quotient-open"
            )));
        }
        let spine = idx as u64 + 1;
        let half = c.trace(spine).initial_radius() / Rational::from_integer(BigInt::from(2));
        let seg = Interval::clipped(Rational::from_integer(0.into()), half, false, false)
            .expect("initial radius of an open apex neighborhood is positive");
        exceptions.insert(spine, IntervalTrace::single(seg));
    }
    HedgehogSet::new(universe, true, IntervalTrace::full(), exceptions)
}
