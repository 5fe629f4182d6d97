//! The diagonal embedding of a finite metric space into a countable power
//! of the metric hedgehog.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use num_traits::{One, Zero};

use crate::embeddings::basis::DiscreteFamily;
use crate::error::{Error, Result};
use crate::hedgehog::{distance, Point};
use crate::metricspace::{dist_to_set, FiniteMetricSpace, PointSet};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KowalskyEmbedding {
    /// For each level, the spine assigned to each member. Spines come from
    /// one pool shared by all levels.
    pub spines: Vec<Vec<u64>>,
    /// `map[x][n]` is the image of point `x` at level `n`.
    pub map: Vec<Vec<Point>>,
}

impl KowalskyEmbedding {
    pub fn levels(&self) -> usize {
        self.spines.len()
    }
}

/// At level `n`, a point `x` of member `U` goes to
/// `(d(x, X \ U), spine of U)`; points outside every member go to the apex.
/// Needs a metric bounded by 1 and families whose members keep their gap.
pub fn kowalsky_embed(
    space: &FiniteMetricSpace,
    families: &[DiscreteFamily],
) -> Result<KowalskyEmbedding> {
    if space.max_distance() > Rational::one() {
        return Err(Error::PreconditionViolated(
            "metric must be bounded by 1; apply bound_metric first".into(),
        ));
    }
    let all = space.all();
    let mut next_spine = 1u64;
    let mut spines = Vec::with_capacity(families.len());
    let mut map = vec![Vec::with_capacity(families.len()); space.len()];
    for (fi, fam) in families.iter().enumerate() {
        for (a, ua) in fam.members.iter().enumerate() {
            for (b, ub) in fam.members.iter().enumerate().skip(a + 1) {
                let close = space.set_distance(ua, ub).is_some_and(|d| d <= fam.gap);
                if close || !ua.is_disjoint(ub) {
                    return Err(Error::NotDiscreteFamily {
                        family: fi,
                        first: a,
                        second: b,
                    });
                }
            }
        }
        let ids: Vec<u64> = (0..fam.members.len() as u64)
            .map(|j| next_spine + j)
            .collect();
        next_spine += fam.members.len() as u64;
        for (x, row) in map.iter_mut().enumerate() {
            let image = match fam.members.iter().position(|u| u.contains(&x)) {
                Some(j) => {
                    let rest: PointSet = all.difference(&fam.members[j]).copied().collect();
                    Point::new(dist_to_set(space, x, &rest), ids[j])?
                }
                None => Point::apex(),
            };
            row.push(image);
        }
        spines.push(ids);
    }
    Ok(KowalskyEmbedding { spines, map })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SeparationFailure {
    /// Two points with the same image.
    Points { x: String, y: String },
    /// A point and a set it lies outside of that no level pulls apart.
    PointAndSet { x: String, set: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparationReport {
    pub separates_points: bool,
    pub separates_points_and_closed_sets: bool,
    pub witness_failures: Vec<SeparationFailure>,
    /// Whether every subset was examined or a sample.
    pub exhaustive: bool,
}

/// Up to this many points every subset is checked.
pub const EXHAUSTIVE_LIMIT: usize = 8;
/// Subsets sampled per point above [`EXHAUSTIVE_LIMIT`].
pub const SAMPLED_SUBSETS: usize = 1000;
const MAX_REPORTED: usize = 16;

/// Checks that the embedding separates points, and points from closed
/// sets: for `x` outside a nonempty `F`, some level keeps the image of `x`
/// at positive distance from the image of `F`. Every subset of a finite
/// space is closed.
pub fn check_separation(emb: &KowalskyEmbedding, space: &FiniteMetricSpace) -> SeparationReport {
    let n = space.len();
    let mut failures = Vec::new();
    let mut separates_points = true;
    for x in 0..n {
        for y in x + 1..n {
            if emb.map[x] == emb.map[y] {
                separates_points = false;
                if failures.len() < MAX_REPORTED {
                    failures.push(SeparationFailure::Points {
                        x: space.label(x).into(),
                        y: space.label(y).into(),
                    });
                }
            }
        }
    }

    let exhaustive = n <= EXHAUSTIVE_LIMIT;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
    let mut separates_sets = true;
    for x in 0..n {
        let others: Vec<usize> = (0..n).filter(|&y| y != x).collect();
        let mut test = |f: PointSet| {
            if f.is_empty() || separated(emb, x, &f) {
                return;
            }
            separates_sets = false;
            if failures.len() < MAX_REPORTED {
                failures.push(SeparationFailure::PointAndSet {
                    x: space.label(x).into(),
                    set: space.names(&f),
                });
            }
        };
        if exhaustive {
            for mask in 1u32..(1 << others.len()) {
                test(
                    others
                        .iter()
                        .enumerate()
                        .filter(|(b, _)| mask & (1 << b) != 0)
                        .map(|(_, &y)| y)
                        .collect(),
                );
            }
        } else {
            for _ in 0..SAMPLED_SUBSETS {
                test(
                    others
                        .iter()
                        .copied()
                        .filter(|_| rng.gen_bool(0.5))
                        .collect(),
                );
            }
        }
    }
    SeparationReport {
        separates_points,
        separates_points_and_closed_sets: separates_sets,
        witness_failures: failures,
        exhaustive,
    }
}

fn separated(emb: &KowalskyEmbedding, x: usize, f: &PointSet) -> bool {
    (0..emb.levels()).any(|n| {
        f.iter()
            .map(|&y| distance(&emb.map[x][n], &emb.map[y][n]))
            .min()
            .is_some_and(|d| !d.is_zero())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embeddings::basis::sigma_discrete_basis;
    use crate::metricspace::DistanceTable;
    use crate::rational::{int, rat};

    fn singletons(n: usize) -> Vec<DiscreteFamily> {
        vec![DiscreteFamily {
            gap: rat(1, 4),
            members: (0..n).map(|x| PointSet::from([x])).collect(),
            source: (1, 1),
        }]
    }

    #[test]
    fn uniform_singletons() {
        let x = FiniteMetricSpace::uniform(&["a", "b", "c"]);
        let e = kowalsky_embed(&x, &singletons(3)).unwrap();
        for p in 0..3 {
            assert_eq!(e.map[p], vec![Point::new(int(1), p as u64 + 1).unwrap()]);
        }
        assert_eq!(distance(&e.map[0][0], &e.map[1][0]), int(2));
        let r = check_separation(&e, &x);
        assert!(r.separates_points && r.separates_points_and_closed_sets);
        assert!(r.witness_failures.is_empty());
    }

    #[test]
    fn one_point() {
        let x = FiniteMetricSpace::uniform(&["a"]);
        let fams = sigma_discrete_basis(&x, None).unwrap();
        let e = kowalsky_embed(&x, &fams).unwrap();
        let r = check_separation(&e, &x);
        assert!(r.separates_points && r.separates_points_and_closed_sets);
    }

    #[test]
    fn two_points_one_member() {
        let x = FiniteMetricSpace::new(DistanceTable {
            labels: vec!["a".into(), "b".into()],
            dist: vec![vec![int(0), rat(1, 2)], vec![rat(1, 2), int(0)]],
        })
        .unwrap();
        let fam = vec![DiscreteFamily {
            gap: rat(1, 4),
            members: vec![PointSet::from([0])],
            source: (1, 1),
        }];
        let e = kowalsky_embed(&x, &fam).unwrap();
        assert_eq!(e.map[0][0], Point::new(rat(1, 2), 1).unwrap());
        assert_eq!(e.map[1][0], Point::apex());
    }

    #[test]
    fn constant_map_fails() {
        let x = FiniteMetricSpace::uniform(&["a", "b"]);
        let e = KowalskyEmbedding {
            spines: vec![vec![]],
            map: vec![vec![Point::apex()], vec![Point::apex()]],
        };
        let r = check_separation(&e, &x);
        assert!(!r.separates_points);
        assert!(!r.separates_points_and_closed_sets);
    }

    #[test]
    fn rejects_close_members() {
        let x = FiniteMetricSpace::uniform(&["a", "b"]);
        let fam = vec![DiscreteFamily {
            gap: int(1),
            members: vec![PointSet::from([0]), PointSet::from([1])],
            source: (1, 1),
        }];
        assert_eq!(
            kowalsky_embed(&x, &fam),
            Err(Error::NotDiscreteFamily {
                family: 0,
                first: 0,
                second: 1
            })
        );
    }
}
