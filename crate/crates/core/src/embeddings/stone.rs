//! Stone's construction of a sigma-discrete open refinement, run on a
//! finite metric space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metricspace::{FiniteMetricSpace, PointSet};
use crate::rational::{self, Rational};

/// `V_{i,n}`: the union of the balls `B(c, 1/2^n)` over its centers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementMember {
    /// Position of `U_i` in the cover.
    pub cover_index: usize,
    pub set: PointSet,
    pub centers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementLevel {
    pub level: u32,
    /// Nonempty members only, by increasing cover index.
    pub members: Vec<RefinementMember>,
}

impl RefinementLevel {
    pub fn radius(&self) -> Rational {
        rational::inv_pow2(self.level)
    }

    pub fn member(&self, cover_index: usize) -> Option<&RefinementMember> {
        self.members.iter().find(|m| m.cover_index == cover_index)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementFamily {
    /// Levels `1..=N`, where `N` is the first level at which the family
    /// covers the space.
    pub levels: Vec<RefinementLevel>,
}

impl RefinementFamily {
    pub fn members(&self) -> impl Iterator<Item = (u32, &RefinementMember)> {
        self.levels
            .iter()
            .flat_map(|l| l.members.iter().map(move |m| (l.level, m)))
    }
}

/// A level past which every `B(c, 3/2^n)` is a singleton, so any point
/// still uncovered becomes a center.
pub fn default_max_level(space: &FiniteMetricSpace) -> u32 {
    let delta = space
        .min_positive_distance()
        .unwrap_or_else(|| Rational::from_integer(1.into()));
    let three = Rational::from_integer(3.into());
    let mut n = 1;
    while rational::inv_pow2(n) * &three > delta {
        n += 1;
    }
    n + 1
}

/// Refines `cover` (read in list order as a well-ordering) by the
/// families `V_{i,n}`. A point `c` is a center of `V_{i,n}` when `U_i` is
/// the first cover member containing it, no earlier level already covers
/// it, and `B(c, 3/2^n)` fits in `U_i`. Stops at the first level after
/// which the space is covered.
pub fn stone_refine(
    space: &FiniteMetricSpace,
    cover: &[PointSet],
    max_level: Option<u32>,
) -> Result<RefinementFamily> {
    let n = space.len();
    if let Some(bad) = cover.iter().flatten().find(|&&x| x >= n) {
        return Err(Error::UnknownLabel(format!("point {bad}")));
    }
    let first_owner: Vec<Option<usize>> = (0..n)
        .map(|x| cover.iter().position(|u| u.contains(&x)))
        .collect();
    if first_owner.iter().any(Option::is_none) {
        return Err(Error::NotACover);
    }
    let max_level = max_level.unwrap_or_else(|| default_max_level(space));
    let mut covered = PointSet::new();
    let mut levels = Vec::new();
    for level in 1..=max_level {
        if covered.len() == n {
            break;
        }
        let r = rational::inv_pow2(level);
        let wide = &r * Rational::from_integer(3.into());
        let mut members: Vec<RefinementMember> = Vec::new();
        for c in 0..n {
            if covered.contains(&c) {
                continue;
            }
            let i = first_owner[c].expect("checked above");
            if !space.ball(c, &wide).is_subset(&cover[i]) {
                continue;
            }
            let pos = match members.iter().position(|m| m.cover_index == i) {
                Some(p) => p,
                None => {
                    members.push(RefinementMember {
                        cover_index: i,
                        set: PointSet::new(),
                        centers: Vec::new(),
                    });
                    members.len() - 1
                }
            };
            members[pos].centers.push(c);
            members[pos].set.extend(space.ball(c, &r));
        }
        members.sort_by_key(|m| m.cover_index);
        for m in &members {
            covered.extend(m.set.iter().copied());
        }
        levels.push(RefinementLevel { level, members });
    }
    if covered.len() < n {
        let residue: PointSet = (0..n).filter(|x| !covered.contains(x)).collect();
        return Err(Error::CoverageNotReachedWithinMaxLevel {
            max_level,
            residue: space.names(&residue),
        });
    }
    Ok(RefinementFamily { levels })
}

/// The three properties a refinement must have.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefinementCheck {
    pub covers: bool,
    pub refines: bool,
    /// Within each level, distinct members stay more than `1/2^n` apart.
    pub gaps: bool,
    pub failures: Vec<String>,
}

impl RefinementCheck {
    pub fn passed(&self) -> bool {
        self.covers && self.refines && self.gaps
    }
}

pub fn check_refinement(
    space: &FiniteMetricSpace,
    cover: &[PointSet],
    family: &RefinementFamily,
) -> RefinementCheck {
    let mut failures = Vec::new();
    let union: PointSet = family
        .members()
        .flat_map(|(_, m)| m.set.iter().copied())
        .collect();
    let covers = union.len() == space.len();
    if !covers {
        failures.push(format!(
            "uncovered: {:?}",
            space.names(&space.all().difference(&union).copied().collect())
        ));
    }
    let mut refines = true;
    for (level, m) in family.members() {
        if !m.set.is_subset(&cover[m.cover_index]) {
            refines = false;
            failures.push(format!(
                "V_({},{level}) is not inside U_{}",
                m.cover_index, m.cover_index
            ));
        }
    }
    let mut gaps = true;
    for l in &family.levels {
        let r = l.radius();
        for (a, ma) in l.members.iter().enumerate() {
            for mb in &l.members[a + 1..] {
                if let Some(d) = space.set_distance(&ma.set, &mb.set) {
                    if d <= r {
                        gaps = false;
                        failures.push(format!(
                            "level {}: members {} and {} are {} apart",
                            l.level,
                            ma.cover_index,
                            mb.cover_index,
                            rational::format(&d)
                        ));
                    }
                }
            }
        }
    }
    RefinementCheck {
        covers,
        refines,
        gaps,
        failures,
    }
}
