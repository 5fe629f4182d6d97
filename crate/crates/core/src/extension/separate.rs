use crate::error::{Error, Result};
use crate::metricspace::{dist_to_set, FiniteMetricSpace, PointSet};

/// `W_1 = U_1` and `W_n = U_n ∩ V_1 ∩ ... ∩ V_{n-1}`. Requires
/// `U_n ∩ V_n = ∅` for every `n`; the output is then pairwise disjoint.
pub fn combine_pairwise(us: &[PointSet], vs: &[PointSet]) -> Result<Vec<PointSet>> {
    if us.len() != vs.len() {
        return Err(Error::LengthMismatch {
            left: us.len(),
            right: vs.len(),
        });
    }
    if let Some(n) = us.iter().zip(vs).position(|(u, v)| !u.is_disjoint(v)) {
        return Err(Error::PremiseViolated(n));
    }
    let mut out = Vec::with_capacity(us.len());
    for (n, u) in us.iter().enumerate() {
        let w = vs[..n]
            .iter()
            .fold(u.clone(), |acc, v| acc.intersection(v).copied().collect());
        out.push(w);
    }
    Ok(out)
}

fn check_disjoint(family: &[PointSet]) -> Result<()> {
    for (i, a) in family.iter().enumerate() {
        for (j, b) in family.iter().enumerate().skip(i + 1) {
            if !a.is_disjoint(b) {
                return Err(Error::NotDisjoint(i, j));
            }
        }
    }
    Ok(())
}

/// `U_i = { x : d(x, F_i) < d(x, ∪_{j≠i} F_j) }`, with `d(x, ∅) = 1`.
/// Points equidistant from their nearest members belong to no `U_i`; an
/// empty `F_i` gets an empty `U_i`.
pub fn metric_separate(space: &FiniteMetricSpace, family: &[PointSet]) -> Result<Vec<PointSet>> {
    metric_separate_within(space, family, &space.all())
}

/// [`metric_separate`] with every `U_i` cut down to `domain`.
pub fn metric_separate_within(
    space: &FiniteMetricSpace,
    family: &[PointSet],
    domain: &PointSet,
) -> Result<Vec<PointSet>> {
    check_disjoint(family)?;
    if let Some(&x) = family.iter().flatten().find(|&&x| x >= space.len()) {
        return Err(Error::UnknownLabel(format!("point {x}")));
    }
    let out = family
        .iter()
        .enumerate()
        .map(|(i, fi)| {
            if fi.is_empty() {
                return PointSet::new();
            }
            let rivals: PointSet = family
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .flat_map(|(_, f)| f.iter().copied())
                .collect();
            domain
                .iter()
                .copied()
                .filter(|&x| dist_to_set(space, x, fi) < dist_to_set(space, x, &rivals))
                .collect()
        })
        .collect();
    Ok(out)
}
