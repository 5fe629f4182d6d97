use crate::error::{Error, Result};
use crate::hedgehog::Point;
use crate::sets::classify::classify_open;
use crate::sets::HedgehogSet;

/// A finite subfamily of a stream together with its positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcover {
    pub indices: Vec<usize>,
    pub sets: Vec<HedgehogSet>,
}

struct Feed<I> {
    stream: I,
    seen: Vec<HedgehogSet>,
    bound: usize,
}

impl<I: Iterator<Item = HedgehogSet>> Feed<I> {
    /// Pulls one more element, checking that it is compact-open.
    fn pull(&mut self) -> Result<Option<usize>> {
        if self.seen.len() >= self.bound {
            return Ok(None);
        }
        let Some(next) = self.stream.next() else {
            return Ok(None);
        };
        let index = self.seen.len();
        if !classify_open(&next).compact {
            return Err(Error::NotCompactOpen { index });
        }
        self.seen.push(next);
        Ok(Some(index))
    }
}

/// Extracts a finite subcover from a stream of compact-open sets whose
/// union is the whole hedgehog, reading at most `bound` elements.
///
/// The first set containing the apex leaves finitely many closed tails
/// uncovered. Each remaining tail is then eaten from its lowest point up,
/// always taking the set that reaches furthest along the spine.
pub fn extract_finite_subcover<I>(stream: I, bound: usize) -> Result<Subcover>
where
    I: IntoIterator<Item = HedgehogSet>,
{
    let mut feed = Feed {
        stream: stream.into_iter(),
        seen: Vec::new(),
        bound,
    };
    let first = loop {
        match feed.pull()? {
            Some(i) if feed.seen[i].contains_apex() => break i,
            Some(_) => continue,
            None => return Err(Error::NoSubcoverWithinBound { bound }),
        }
    };
    let universe = feed.seen[first].universe();
    let mut chosen = vec![first];
    let mut residue = feed.seen[first].complement();

    while !residue.is_empty() {
        // The residue is closed and misses the apex, so its lowest point on
        // the least nonempty spine exists.
        let spine = residue
            .exceptions()
            .iter()
            .find(|(_, t)| !t.is_empty())
            .map(|(s, _)| *s)
            .unwrap_or_else(|| residue.first_default_spine());
        let low = residue.trace(spine).intervals()[0].lo().clone();
        let target = Point::new(low.clone(), spine).expect("residue lies on a spine");

        let best_among = |sets: &[HedgehogSet]| {
            sets.iter()
                .enumerate()
                .filter(|(_, s)| s.member(&target))
                .max_by(|(_, a), (_, b)| reach(a, spine, &low).cmp(&reach(b, spine, &low)))
                .map(|(i, _)| i)
        };
        let pick = match best_among(&feed.seen) {
            Some(i) => i,
            None => loop {
                match feed.pull()? {
                    Some(i) if feed.seen[i].member(&target) => break i,
                    Some(_) => continue,
                    None => return Err(Error::NoSubcoverWithinBound { bound }),
                }
            },
        };
        chosen.push(pick);
        residue = residue.difference(&feed.seen[pick])?;
    }

    chosen.sort_unstable();
    chosen.dedup();
    let sets: Vec<HedgehogSet> = chosen.iter().map(|&i| feed.seen[i].clone()).collect();
    let mut union = HedgehogSet::empty(universe);
    for s in &sets {
        union = union.union(s)?;
    }
    debug_assert!(HedgehogSet::full(universe).is_subset(&union)?);
    Ok(Subcover {
        indices: chosen,
        sets,
    })
}

/// How far up `spine` the interval of `set` containing `low` extends;
/// a closed top beats an open one at the same height.
fn reach(
    set: &HedgehogSet,
    spine: u64,
    low: &crate::rational::Rational,
) -> (crate::rational::Rational, bool) {
    set.trace(spine)
        .intervals()
        .iter()
        .find(|i| i.contains(low))
        .map(|i| (i.hi().clone(), i.hi_closed()))
        .expect("caller checked membership")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hedgehog::SpineUniverse;
    use crate::rational::rat;

    const INF: SpineUniverse = SpineUniverse::CountablyInfinite;

    #[test]
    fn tail_and_patch() {
        let a = HedgehogSet::without_closed_tails(INF, [(1, rat(1, 2))]).unwrap();
        let b = HedgehogSet::tail(INF, 1, &rat(1, 4), false).unwrap();
        let sub = extract_finite_subcover([a.clone(), b.clone()], 10).unwrap();
        assert_eq!(sub.indices, vec![0, 1]);
        assert_eq!(sub.sets, vec![a, b]);
    }

    #[test]
    fn whole_space() {
        let j = HedgehogSet::full(INF);
        let sub = extract_finite_subcover([j.clone()], 1).unwrap();
        assert_eq!(sub.sets, vec![j]);
    }

    #[test]
    fn never_covers_the_top() {
        let base = HedgehogSet::without_closed_tails(INF, [(1, rat(1, 1))]).unwrap();
        let stream = std::iter::once(base)
            .chain((1..).map(|n| HedgehogSet::tail(INF, 2, &rat(1, n + 1), false).unwrap()));
        assert_eq!(
            extract_finite_subcover(stream, 50),
            Err(Error::NoSubcoverWithinBound { bound: 50 })
        );
    }

    #[test]
    fn rejects_non_open_elements() {
        let seg = HedgehogSet::initial_segment(INF, &rat(1, 2), false).unwrap();
        assert_eq!(
            extract_finite_subcover([seg], 5),
            Err(Error::NotCompactOpen { index: 0 })
        );
    }

    #[test]
    fn chains_several_pieces() {
        let base = HedgehogSet::without_closed_tails(INF, [(3, rat(1, 8))]).unwrap();
        let pieces = [(1, 16, 3, 8), (1, 4, 5, 8), (1, 2, 1, 1)].map(|(a, b, c, d)| {
            HedgehogSet::spine_trace(
                INF,
                3,
                crate::sets::IntervalTrace::single(
                    crate::sets::Interval::new(rat(a, b), rat(c, d), false, (c, d) == (1, 1))
                        .unwrap(),
                ),
            )
            .unwrap()
        });
        let sub = extract_finite_subcover(std::iter::once(base).chain(pieces), 10).unwrap();
        assert_eq!(sub.indices, vec![0, 1, 2, 3]);
    }
}
