//! The hedgehog as a poset: the apex is the bottom, each spine is a chain,
//! and points on distinct spines are incomparable.

use crate::error::{Error, Result};
use crate::hedgehog::Point;

/// `p <= q` iff `p` is the apex, or both lie on one spine with `p` lower.
pub fn leq(p: &Point, q: &Point) -> bool {
    p.is_apex() || (p.spine() == q.spine() && p.height() <= q.height())
}

/// Greatest lower bound of a nonempty finite set. Always exists.
pub fn infimum<'a, I>(points: I) -> Result<Point>
where
    I: IntoIterator<Item = &'a Point>,
{
    let mut iter = points.into_iter();
    let mut best = iter.next().ok_or(Error::EmptyInput)?.clone();
    for p in iter {
        if best.is_apex() {
            break;
        }
        if p.spine() != best.spine() {
            best = Point::apex();
        } else if p.height() < best.height() {
            best = p.clone();
        }
    }
    Ok(best)
}

/// Least upper bound of a nonempty finite directed set, i.e. one whose
/// non-apex points all share a spine.
pub fn supremum_directed<'a, I>(points: I) -> Result<Point>
where
    I: IntoIterator<Item = &'a Point>,
{
    let mut iter = points.into_iter().peekable();
    if iter.peek().is_none() {
        return Err(Error::EmptyInput);
    }
    let mut best = Point::apex();
    for p in iter {
        match (best.spine(), p.spine()) {
            (_, None) => {}
            (None, Some(_)) => best = p.clone(),
            (Some(a), Some(b)) if a != b => return Err(Error::NotDirected(a, b)),
            (Some(_), Some(_)) => {
                if p.height() > best.height() {
                    best = p.clone();
                }
            }
        }
    }
    Ok(best)
}
