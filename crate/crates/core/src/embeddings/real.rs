//! A closed embedding of the real line into the square of the metric
//! hedgehog with countably many spines indexed by the integers.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hedgehog::Point;
use crate::rational::{self, Rational};

/// Integer spine labels go to positive spines in the order
/// `0, -1, 1, -2, 2, ...`.
pub fn int_to_spine(z: i64) -> u64 {
    if z >= 0 {
        2 * z as u64 + 1
    } else {
        2 * z.unsigned_abs()
    }
}

/// Inverse of [`int_to_spine`].
pub fn spine_to_int(s: u64) -> i64 {
    assert!(s >= 1, "spines start at 1");
    if s % 2 == 1 {
        ((s - 1) / 2) as i64
    } else {
        -((s / 2) as i64)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointPair {
    pub first: Point,
    pub second: Point,
}

fn on_int_spine(height: Rational, z: &BigInt) -> Result<Point> {
    let z = z
        .to_i64()
        .ok_or_else(|| Error::PreconditionViolated("integer part out of range".into()))?;
    Point::new(height, int_to_spine(z))
}

/// Writes `x = 2k + t` and `x = 2l + 1 + s` with `t, s` in `(-1, 1]` and
/// returns `((1 - |t|, k), (1 - |s|, l))`.
pub fn embed_real(x: &Rational) -> Result<PointPair> {
    let one = Rational::one();
    let two = Rational::from_integer(BigInt::from(2));
    let k = rational::ceil_int(&((x - &one) / &two));
    let t = x - &two * Rational::from_integer(k.clone());
    let l = rational::ceil_int(&((x - &two) / &two));
    let s = x - &two * Rational::from_integer(l.clone()) - &one;
    Ok(PointPair {
        first: on_int_spine(&one - rational::abs(&t), &k)?,
        second: on_int_spine(&one - rational::abs(&s), &l)?,
    })
}

/// Which description of the image a pair matches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Branch {
    /// `second = (1 - t, n)`, so `x = 2n + 1 - t`.
    Same { n: i64 },
    /// `second = (1 - t, n - 1)`, so `x = 2n + t - 1`.
    Below { n: i64 },
    /// `first` is the apex and `second = (1, m)`, so `x = 2m + 1`.
    Apex { m: i64 },
}

fn branch(pair: &PointPair) -> Option<Branch> {
    let one = Rational::one();
    match pair.first.spine() {
        None => match pair.second.spine() {
            Some(m) if pair.second.height().is_one() => Some(Branch::Apex { m: spine_to_int(m) }),
            _ => None,
        },
        Some(spine) => {
            let n = spine_to_int(spine);
            let h = &one - pair.first.height();
            if h.is_zero() {
                // Both branches name the same point 2n.
                return pair.second.is_apex().then_some(Branch::Same { n });
            }
            let m = spine_to_int(pair.second.spine()?);
            if *pair.second.height() != h {
                None
            } else if m == n {
                Some(Branch::Same { n })
            } else if m == n - 1 {
                Some(Branch::Below { n })
            } else {
                None
            }
        }
    }
}

/// Decides whether `pair` is the image of some real number.
pub fn real_image_member(pair: &PointPair) -> bool {
    branch(pair).is_some()
}

/// The real number mapped to `pair`.
pub fn invert_real(pair: &PointPair) -> Result<Rational> {
    let b = branch(pair).ok_or(Error::NotInImage)?;
    let int = |z: i64| Rational::from_integer(BigInt::from(z));
    let t = pair.first.height();
    Ok(match b {
        Branch::Same { n } => int(2 * n + 1) - t,
        Branch::Below { n } => int(2 * n - 1) + t,
        Branch::Apex { m } => int(2 * m + 1),
    })
}
