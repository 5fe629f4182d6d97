use serde::{Deserialize, Serialize};

use crate::embeddings::stone::stone_refine;
use crate::error::Result;
use crate::metricspace::{FiniteMetricSpace, PointSet};
use crate::rational::{self, Rational};

/// One level of one refinement: pairwise disjoint sets whose points are
/// more than `gap` apart across members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscreteFamily {
    #[serde(with = "rational::serde_str")]
    pub gap: Rational,
    pub members: Vec<PointSet>,
    /// `(m, n)`: level `n` of the refinement of the cover by `1/m`-balls.
    pub source: (u32, u32),
}

/// A resolution at which the `1/m`-balls are singletons.
pub fn default_resolution(space: &FiniteMetricSpace) -> u32 {
    let delta = space
        .min_positive_distance()
        .unwrap_or_else(|| Rational::from_integer(1.into()));
    let inv = rational::ceil_int(&delta.recip());
    u32::try_from(inv).unwrap_or(u32::MAX).max(1)
}

/// For `m = 1..=resolution`, refines the cover by balls `B(x, 1/m)` and
/// returns every nonempty level of every refinement as its own family.
pub fn sigma_discrete_basis(
    space: &FiniteMetricSpace,
    resolution: Option<u32>,
) -> Result<Vec<DiscreteFamily>> {
    let resolution = resolution.unwrap_or_else(|| default_resolution(space));
    let mut out = Vec::new();
    for m in 1..=resolution {
        let r = Rational::new(1.into(), m.into());
        let cover: Vec<PointSet> = (0..space.len()).map(|x| space.ball(x, &r)).collect();
        let fam = stone_refine(space, &cover, None)?;
        for level in fam.levels {
            if level.members.is_empty() {
                continue;
            }
            out.push(DiscreteFamily {
                gap: level.radius(),
                members: level.members.into_iter().map(|v| v.set).collect(),
                source: (m, level.level),
            });
        }
    }
    Ok(out)
}

/// A ball that is not a union of family members.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisFailure {
    pub center: String,
    pub m: u32,
    pub uncovered: Vec<String>,
}

/// Checks that every ball `B(x, 1/m)`, `m <= resolution`, is the union of
/// the members it contains.
pub fn basis_check(
    space: &FiniteMetricSpace,
    families: &[DiscreteFamily],
    resolution: u32,
) -> Vec<BasisFailure> {
    let members: Vec<&PointSet> = families.iter().flat_map(|f| &f.members).collect();
    let mut failures = Vec::new();
    for m in 1..=resolution {
        let r = Rational::new(1.into(), m.into());
        for x in 0..space.len() {
            let ball = space.ball(x, &r);
            let inside: PointSet = members
                .iter()
                .filter(|s| s.is_subset(&ball))
                .flat_map(|s| s.iter().copied())
                .collect();
            if inside != ball {
                let missing: PointSet = ball.difference(&inside).copied().collect();
                failures.push(BasisFailure {
                    center: space.label(x).to_string(),
                    m,
                    uncovered: space.names(&missing),
                });
            }
        }
    }
    failures
}
