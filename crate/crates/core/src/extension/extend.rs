//! Extending hedgehog-valued maps from a subset of a finite metric space.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extension::separate::metric_separate_within;
use crate::hedgehog::{project_height, project_spine, Point, SpineUniverse};
use crate::metricspace::{mcshane_extend, FiniteMetricSpace, PointSet, ScalarMap};
use crate::rational::{self, Rational};

/// Hedgehog-valued map on some points of a finite space.
pub type HedgehogMap = BTreeMap<usize, Point>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension {
    /// The extended map, defined everywhere.
    pub map: HedgehogMap,
    /// Extension of the heights of `f`.
    pub g: ScalarMap,
    /// Extension of the heights of `f` joined with 0 off the separators.
    pub h: ScalarMap,
    /// The separator `U_i` of each spine `i` in the image of `f`.
    pub separators: BTreeMap<u64, PointSet>,
    /// The preimage `F_i` of each open spine.
    pub preimages: BTreeMap<u64, PointSet>,
}

/// Extends `f: A -> J` to the whole space.
///
/// 1. `G` extends the heights of `f`.
/// 2. `F_i` is the set of points of `A` that `f` sends onto spine `i`.
/// 3. Inside `{G > 0}`, the `F_i` are pulled apart into disjoint `U_i`.
/// 4. `H` extends the heights of `f` on `A` together with 0 off `∪ U_i`.
/// 5. `F(x) = (H(x), i)` on `U_i` and the apex elsewhere.
pub fn hedgehog_extend(
    space: &FiniteMetricSpace,
    f: &HedgehogMap,
    universe: SpineUniverse,
) -> Result<Extension> {
    if f.is_empty() {
        return Err(Error::EmptyDomain);
    }
    for (&x, p) in f {
        if x >= space.len() {
            return Err(Error::UnknownLabel(format!("point {x}")));
        }
        universe.check_point(p)?;
    }
    let heights = ScalarMap::new(f.iter().map(|(&x, p)| (x, project_height(p))).collect())?;
    let g = mcshane_extend(space, &heights)?;

    let mut preimages: BTreeMap<u64, PointSet> = BTreeMap::new();
    for (&x, p) in f {
        if let Some(i) = p.spine() {
            preimages.entry(i).or_default().insert(x);
        }
    }
    let positive: PointSet = g
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(x, _)| x)
        .collect();
    let spines: Vec<u64> = preimages.keys().copied().collect();
    let family: Vec<PointSet> = preimages.values().cloned().collect();
    let us = metric_separate_within(space, &family, &positive)?;
    let separators: BTreeMap<u64, PointSet> = spines.iter().copied().zip(us).collect();

    let inside: PointSet = separators.values().flatten().copied().collect();
    let mut h_data: BTreeMap<usize, Rational> = (0..space.len())
        .filter(|x| !inside.contains(x))
        .map(|x| (x, Rational::zero()))
        .collect();
    for (x, v) in heights.iter() {
        h_data.insert(x, v.clone());
    }
    let h = mcshane_extend(space, &ScalarMap::new(h_data)?)?;

    let mut map = HedgehogMap::new();
    for x in 0..space.len() {
        let spine = separators
            .iter()
            .find(|(_, u)| u.contains(&x))
            .map(|(i, _)| *i);
        let p = match spine {
            Some(i) => Point::new(h.get(x).expect("h is total").clone(), i)?,
            None => Point::apex(),
        };
        map.insert(x, p);
    }
    Ok(Extension {
        map,
        g,
        h,
        separators,
        preimages,
    })
}

/// Outcome of one identity check, with a few offending points.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub passed: bool,
    pub witnesses: Vec<String>,
}

impl IdentityCheck {
    fn from_witnesses(witnesses: Vec<String>) -> Self {
        IdentityCheck {
            passed: witnesses.is_empty(),
            witnesses: witnesses.into_iter().take(16).collect(),
        }
    }
}

/// On finite spaces continuity is automatic, so an extension is judged by
/// the algebraic identities it must satisfy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReport {
    /// `F = f` on `A`.
    pub restriction: IdentityCheck,
    /// `π_i ∘ F = min(χ_{U_i}, H)` for every spine `i`.
    pub spine_projection: IdentityCheck,
    /// `π ∘ F = H` on `∪ U_i` and 0 elsewhere.
    pub height_projection: IdentityCheck,
    pub disjoint: IdentityCheck,
    /// `F_i ⊆ U_i`.
    pub contains_preimages: IdentityCheck,
    /// Distinct separators keep positive distance on `{G > 0}`.
    pub separated: IdentityCheck,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        [
            &self.restriction,
            &self.spine_projection,
            &self.height_projection,
            &self.disjoint,
            &self.contains_preimages,
            &self.separated,
        ]
        .iter()
        .all(|c| c.passed)
    }
}

pub fn verify_extension(
    space: &FiniteMetricSpace,
    ext: &Extension,
    f: &HedgehogMap,
) -> ExtensionReport {
    let name = |x: usize| space.label(x).to_string();
    let value = |m: &ScalarMap, x: usize| m.get(x).cloned().unwrap_or_else(Rational::zero);

    let restriction = f
        .iter()
        .filter(|(x, p)| ext.map.get(x) != Some(p))
        .map(|(x, p)| format!("{}: expected {p}", name(*x)))
        .collect();

    let mut spine_bad = Vec::new();
    let mut height_bad = Vec::new();
    for x in 0..space.len() {
        let Some(p) = ext.map.get(&x) else {
            spine_bad.push(format!("{}: unmapped", name(x)));
            continue;
        };
        let hx = value(&ext.h, x);
        let mut in_some = false;
        for (i, u) in &ext.separators {
            let chi = if u.contains(&x) {
                Rational::one()
            } else {
                Rational::zero()
            };
            in_some |= u.contains(&x);
            if project_spine(p, *i) != chi.min(hx.clone()) {
                spine_bad.push(format!("{} on spine {i}", name(x)));
            }
        }
        if let Some(i) = p.spine() {
            if !ext.separators.contains_key(&i) {
                spine_bad.push(format!("{} lands on unexpected spine {i}", name(x)));
            }
        }
        let want = if in_some { hx } else { Rational::zero() };
        if project_height(p) != want {
            height_bad.push(format!(
                "{}: height {} but expected {}",
                name(x),
                rational::format(&project_height(p)),
                rational::format(&want)
            ));
        }
    }

    let us: Vec<(&u64, &PointSet)> = ext.separators.iter().collect();
    let mut disjoint = Vec::new();
    let mut separated = Vec::new();
    let positive: PointSet = ext
        .g
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(x, _)| x)
        .collect();
    for (a, (i, ui)) in us.iter().enumerate() {
        for (j, uj) in &us[a + 1..] {
            if !ui.is_disjoint(uj) {
                disjoint.push(format!("U_{i} and U_{j} meet"));
            }
            let pi: PointSet = ui.intersection(&positive).copied().collect();
            let pj: PointSet = uj.intersection(&positive).copied().collect();
            if space.set_distance(&pi, &pj).is_some_and(|d| d.is_zero()) {
                separated.push(format!("U_{i} and U_{j} touch"));
            }
        }
    }
    let contains = ext
        .preimages
        .iter()
        .filter(|(i, fi)| !ext.separators.get(i).is_some_and(|u| fi.is_subset(u)))
        .map(|(i, _)| format!("F_{i} not inside U_{i}"))
        .collect();

    ExtensionReport {
        restriction: IdentityCheck::from_witnesses(restriction),
        spine_projection: IdentityCheck::from_witnesses(spine_bad),
        height_projection: IdentityCheck::from_witnesses(height_bad),
        disjoint: IdentityCheck::from_witnesses(disjoint),
        contains_preimages: IdentityCheck::from_witnesses(contains),
        separated: IdentityCheck::from_witnesses(separated),
    }
}

/// Separates a disjoint family through the extension operator: put
/// `f = (1, i)` on the `i`-th member, extend, and read back the preimage
/// of each open spine.
pub fn separate_via_extension(
    space: &FiniteMetricSpace,
    family: &[PointSet],
) -> Result<Vec<PointSet>> {
    let mut f = HedgehogMap::new();
    for (i, fi) in family.iter().enumerate() {
        for &x in fi {
            let p = Point::new(Rational::one(), i as u64 + 1)?;
            if f.insert(x, p).is_some() {
                let other = family.iter().position(|g| g.contains(&x)).unwrap_or(i);
                return Err(Error::NotDisjoint(other, i));
            }
        }
    }
    let count = family.len() as u64;
    if f.is_empty() {
        return Ok(vec![PointSet::new(); family.len()]);
    }
    let ext = hedgehog_extend(space, &f, SpineUniverse::finite(count)?)?;
    Ok((1..=count)
        .map(|i| {
            ext.map
                .iter()
                .filter(|(_, p)| p.spine() == Some(i))
                .map(|(x, _)| *x)
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn pt(h: Rational, i: u64) -> Point {
        Point::new(h, i).unwrap()
    }

    #[test]
    fn three_point_example() {
        let x = FiniteMetricSpace::uniform(&["a", "b", "c"]);
        let f = HedgehogMap::from([(0, pt(int(1), 1)), (1, pt(int(1), 2))]);
        let ext = hedgehog_extend(&x, &f, SpineUniverse::Finite(2)).unwrap();
        assert_eq!(ext.map[&0], pt(int(1), 1));
        assert_eq!(ext.map[&1], pt(int(1), 2));
        assert_eq!(ext.map[&2], Point::apex());
        assert_eq!(ext.separators[&1], PointSet::from([0]));
        assert_eq!(ext.separators[&2], PointSet::from([1]));
        assert!(verify_extension(&x, &ext, &f).passed());
    }

    #[test]
    fn constant_apex() {
        let x = FiniteMetricSpace::uniform(&["a", "b", "c"]);
        let f = HedgehogMap::from([(0, Point::apex()), (2, Point::apex())]);
        let ext = hedgehog_extend(&x, &f, SpineUniverse::Finite(2)).unwrap();
        assert!(ext.map.values().all(Point::is_apex));
        assert!(verify_extension(&x, &ext, &f).passed());
    }

    #[test]
    fn total_map_is_kept() {
        let x = FiniteMetricSpace::uniform(&["a", "b", "c"]);
        let f = HedgehogMap::from([
            (0, pt(rat(1, 2), 1)),
            (1, Point::apex()),
            (2, pt(rat(1, 3), 1)),
        ]);
        let ext = hedgehog_extend(&x, &f, SpineUniverse::CountablyInfinite).unwrap();
        assert_eq!(ext.map, f);
    }

    #[test]
    fn tampering_is_caught() {
        let x = FiniteMetricSpace::uniform(&["a", "b", "c"]);
        let f = HedgehogMap::from([(0, pt(int(1), 1)), (1, pt(int(1), 2))]);
        let mut ext = hedgehog_extend(&x, &f, SpineUniverse::Finite(2)).unwrap();
        ext.map.insert(2, pt(rat(1, 2), 1));
        let r = verify_extension(&x, &ext, &f);
        assert!(!r.spine_projection.passed);
        assert!(r
            .spine_projection
            .witnesses
            .iter()
            .any(|w| w.starts_with("c on spine 1")));
    }

    #[test]
    fn errors() {
        let x = FiniteMetricSpace::uniform(&["a", "b"]);
        assert_eq!(
            hedgehog_extend(&x, &HedgehogMap::new(), SpineUniverse::Finite(1)),
            Err(Error::EmptyDomain)
        );
        let f = HedgehogMap::from([(0, pt(int(1), 3))]);
        assert!(matches!(
            hedgehog_extend(&x, &f, SpineUniverse::Finite(2)),
            Err(Error::SpineOutOfUniverse { .. })
        ));
    }

    #[test]
    fn separation_through_extension() {
        let x = FiniteMetricSpace::uniform(&["a", "b", "c", "d"]);
        let fam = vec![PointSet::from([0, 1]), PointSet::from([3])];
        let us = separate_via_extension(&x, &fam).unwrap();
        assert!(us[0].is_disjoint(&us[1]));
        assert!(fam[0].is_subset(&us[0]) && fam[1].is_subset(&us[1]));
    }
}
