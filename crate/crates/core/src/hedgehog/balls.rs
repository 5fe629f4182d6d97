use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hedgehog::{Point, SpineUniverse};
use crate::rational::{self, Rational};
use crate::sets::{HedgehogSet, Interval, IntervalTrace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BallKind {
    Open,
    Closed,
}

impl std::str::FromStr for BallKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "open" => Ok(BallKind::Open),
            "closed" => Ok(BallKind::Closed),
            other => Err(format!("ball kind must be open or closed, got {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ball {
    pub center: Point,
    #[serde(with = "rational::serde_str")]
    pub radius: Rational,
    pub set: HedgehogSet,
}

/// Heights `s` in `(0, 1]` with `lo < s < hi` (`<=` on both sides when
/// `closed`).
fn band(lo: Rational, hi: Rational, closed: bool) -> IntervalTrace {
    IntervalTrace::from_intervals(Interval::clipped(lo, hi, closed, closed))
}

/// The open or closed ball of radius `r` around `center`.
pub fn ball(
    center: &Point,
    r: &Rational,
    kind: BallKind,
    universe: SpineUniverse,
) -> Result<HedgehogSet> {
    if !r.is_positive() {
        return Err(Error::NonPositiveRadius);
    }
    universe.check_point(center)?;
    let closed = kind == BallKind::Closed;
    let t = center.height();
    let Some(spine) = center.spine() else {
        return HedgehogSet::new(
            universe,
            true,
            band(-Rational::one(), r.clone(), closed),
            BTreeMap::new(),
        );
    };
    let apex = t < r || (closed && t == r);
    // Across spines the distance is t + s, so s must stay below r - t.
    let default = band(-Rational::one(), r - t, closed);
    let own = band(t - r, t + r, closed);
    HedgehogSet::new(universe, apex, default, BTreeMap::from([(spine, own)]))
}

/// A finite cover of a finite hedgehog by open `eps`-balls: the ball at the
/// apex and, on every spine, balls centered at heights `n * eps / 2` for
/// `2 <= n <= 2 / eps`.
pub fn epsilon_net(universe: SpineUniverse, eps: &Rational) -> Result<Vec<Ball>> {
    let SpineUniverse::Finite(k) = universe else {
        return Err(Error::NotTotallyBounded);
    };
    if !eps.is_positive() {
        return Err(Error::NonPositiveRadius);
    }
    let mut balls = vec![Ball {
        center: Point::apex(),
        radius: eps.clone(),
        set: ball(&Point::apex(), eps, BallKind::Open, universe)?,
    }];
    let two = Rational::from_integer(BigInt::from(2));
    let top = rational::floor_int(&(&two / eps))
        .to_u64()
        .ok_or_else(|| Error::PreconditionViolated("radius too small for a net".into()))?;
    for spine in 1..=k {
        for n in 2..=top {
            let h = Rational::from_integer(BigInt::from(n)) * eps / &two;
            let center = Point::new(h, spine)?;
            let set = ball(&center, eps, BallKind::Open, universe)?;
            balls.push(Ball {
                center,
                radius: eps.clone(),
                set,
            });
        }
    }
    Ok(balls)
}

/// Union of the sets of `balls`.
pub fn union_of(universe: SpineUniverse, balls: &[Ball]) -> Result<HedgehogSet> {
    balls
        .iter()
        .try_fold(HedgehogSet::empty(universe), |acc, b| acc.union(&b.set))
}
