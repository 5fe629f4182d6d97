//! Finite metric spaces with exact distances.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Points of a finite space are addressed by position in the label list.
pub type PointSet = BTreeSet<usize>;

/// An unvalidated distance table, as read from input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceTable {
    pub labels: Vec<String>,
    #[serde(with = "rows")]
    pub dist: Vec<Vec<Rational>>,
}

mod rows {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Row(#[serde(with = "crate::rational::serde_vec")] Vec<Rational>);

    pub fn serialize<S: Serializer>(d: &[Vec<Rational>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Row> = d.iter().map(|r| Row(r.clone())).collect();
        rows.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Rational>>, D::Error> {
        Ok(Vec::<Row>::deserialize(d)?
            .into_iter()
            .map(|r| r.0)
            .collect())
    }
}

/// The first failed axiom found by [`validate_metric`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MetricViolation {
    NotSquare { row: usize },
    DuplicateLabel { label: String },
    Negative { x: String, y: String },
    NonzeroDiagonal { x: String },
    ZeroDistance { x: String, y: String },
    Asymmetric { x: String, y: String },
    Triangle { x: String, y: String, z: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricVerdict {
    pub valid: bool,
    pub violation: Option<MetricViolation>,
}

/// Checks every metric axiom exactly and reports the first violation.
pub fn validate_metric(table: &DistanceTable) -> MetricVerdict {
    let violation = find_violation(table);
    MetricVerdict {
        valid: violation.is_none(),
        violation,
    }
}

fn find_violation(table: &DistanceTable) -> Option<MetricViolation> {
    let n = table.labels.len();
    if table.dist.len() != n {
        return Some(MetricViolation::NotSquare {
            row: table.dist.len().min(n),
        });
    }
    if let Some(row) = table.dist.iter().position(|r| r.len() != n) {
        return Some(MetricViolation::NotSquare { row });
    }
    let mut seen = BTreeSet::new();
    for l in &table.labels {
        if !seen.insert(l) {
            return Some(MetricViolation::DuplicateLabel { label: l.clone() });
        }
    }
    let d = &table.dist;
    let name = |i: usize| table.labels[i].clone();
    for x in 0..n {
        if !d[x][x].is_zero() {
            return Some(MetricViolation::NonzeroDiagonal { x: name(x) });
        }
        for y in 0..n {
            if d[x][y].is_negative() {
                return Some(MetricViolation::Negative {
                    x: name(x),
                    y: name(y),
                });
            }
            if x != y && d[x][y].is_zero() {
                return Some(MetricViolation::ZeroDistance {
                    x: name(x),
                    y: name(y),
                });
            }
            if d[x][y] != d[y][x] {
                return Some(MetricViolation::Asymmetric {
                    x: name(x),
                    y: name(y),
                });
            }
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if d[x][z] > &d[x][y] + &d[y][z] {
                    return Some(MetricViolation::Triangle {
                        x: name(x),
                        y: name(y),
                        z: name(z),
                    });
                }
            }
        }
    }
    None
}

/// A validated finite metric space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: Vec<Vec<Rational>>,
}

impl FiniteMetricSpace {
    pub fn new(table: DistanceTable) -> Result<Self> {
        if let Some(v) = find_violation(&table) {
            return Err(Error::InvalidSpace(format!("{v:?}")));
        }
        Ok(FiniteMetricSpace {
            labels: table.labels,
            dist: table.dist,
        })
    }

    /// Every pair of distinct points at distance 1.
    pub fn uniform(labels: &[&str]) -> Self {
        let n = labels.len();
        let dist = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Rational::zero()
                        } else {
                            Rational::one()
                        }
                    })
                    .collect()
            })
            .collect();
        FiniteMetricSpace {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            dist,
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn indices<'a>(&self, labels: impl IntoIterator<Item = &'a String>) -> Result<PointSet> {
        labels.into_iter().map(|l| self.index(l)).collect()
    }

    pub fn names(&self, set: &PointSet) -> Vec<String> {
        set.iter().map(|&i| self.labels[i].clone()).collect()
    }

    pub fn all(&self) -> PointSet {
        (0..self.len()).collect()
    }

    pub fn d(&self, x: usize, y: usize) -> &Rational {
        &self.dist[x][y]
    }

    pub fn table(&self) -> DistanceTable {
        DistanceTable {
            labels: self.labels.clone(),
            dist: self.dist.clone(),
        }
    }

    /// Smallest distance between distinct points, `None` for fewer than two.
    pub fn min_positive_distance(&self) -> Option<Rational> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .map(|(i, j)| self.dist[i][j].clone())
            .min()
    }

    pub fn max_distance(&self) -> Rational {
        self.dist
            .iter()
            .flatten()
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `B(x, r) = { y : d(x, y) < r }`.
    pub fn ball(&self, x: usize, r: &Rational) -> PointSet {
        (0..self.len()).filter(|&y| self.dist[x][y] < *r).collect()
    }

    /// Distance between two nonempty sets.
    pub fn set_distance(&self, a: &PointSet, b: &PointSet) -> Option<Rational> {
        a.iter()
            .flat_map(|&x| b.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.dist[x][y].clone())
            .min()
    }
}

impl Serialize for FiniteMetricSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.table().serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteMetricSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        FiniteMetricSpace::new(DistanceTable::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// `d(x, A)`, with the convention `d(x, {}) = 1`.
pub fn dist_to_set(space: &FiniteMetricSpace, x: usize, a: &PointSet) -> Rational {
    a.iter()
        .map(|&y| space.d(x, y))
        .min()
        .cloned()
        .unwrap_or_else(Rational::one)
}

/// Replaces every distance by `min(1, d)`.
pub fn bound_metric(space: &FiniteMetricSpace) -> FiniteMetricSpace {
    let one = Rational::one();
    FiniteMetricSpace {
        labels: space.labels.clone(),
        dist: space
            .dist
            .iter()
            .map(|row| row.iter().map(|v| v.clone().min(one.clone())).collect())
            .collect(),
    }
}

/// A truncated product distance and the largest possible contribution of
/// the omitted levels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductDistance {
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    #[serde(with = "rational::serde_str")]
    pub tail_bound: Rational,
}

/// `sum_n d_n(x_n, y_n) / 2^n` over the given levels `n = 1..N`.
pub fn product_distance(
    xs: &[usize],
    ys: &[usize],
    metrics: &[FiniteMetricSpace],
) -> Result<ProductDistance> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    if xs.len() != metrics.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: metrics.len(),
        });
    }
    let mut value = Rational::zero();
    for (n, ((x, y), m)) in xs.iter().zip(ys).zip(metrics).enumerate() {
        if m.max_distance() > Rational::one() {
            return Err(Error::UnboundedMetric { level: n + 1 });
        }
        if *x >= m.len() || *y >= m.len() {
            return Err(Error::UnknownLabel(format!(
                "point {} at level {}",
                x.max(y),
                n + 1
            )));
        }
        value += m.d(*x, *y) * rational::inv_pow2(n as u32 + 1);
    }
    Ok(ProductDistance {
        value,
        tail_bound: rational::inv_pow2(xs.len() as u32),
    })
}

/// A `[0, 1]`-valued function on some points of a finite space.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScalarMap {
    values: BTreeMap<usize, Rational>,
}

impl ScalarMap {
    pub fn new(values: BTreeMap<usize, Rational>) -> Result<Self> {
        for v in values.values() {
            if v.is_negative() || *v > Rational::one() {
                return Err(Error::HeightOutOfRange(rational::format(v)));
            }
        }
        Ok(ScalarMap { values })
    }

    pub fn get(&self, x: usize) -> Option<&Rational> {
        self.values.get(&x)
    }

    pub fn domain(&self) -> PointSet {
        self.values.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.values.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Label-keyed wire form.
    pub fn to_labeled(&self, space: &FiniteMetricSpace) -> BTreeMap<String, String> {
        self.values
            .iter()
            .map(|(k, v)| (space.label(*k).to_string(), rational::format(v)))
            .collect()
    }

    pub fn from_labeled(space: &FiniteMetricSpace, m: &BTreeMap<String, String>) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (k, v) in m {
            let q = rational::parse(v).map_err(|e| Error::InvalidSpace(e.to_string()))?;
            values.insert(space.index(k)?, q);
        }
        Self::new(values)
    }
}

/// Smallest `L` with `|f(a) - f(b)| <= L d(a, b)` on the domain of `f`.
pub fn lipschitz_constant(space: &FiniteMetricSpace, f: &ScalarMap) -> Rational {
    let pts: Vec<(usize, &Rational)> = f.iter().collect();
    let mut best = Rational::zero();
    for (i, (a, fa)) in pts.iter().enumerate() {
        for (b, fb) in &pts[i + 1..] {
            let ratio = (*fa - *fb).abs() / space.d(*a, *b);
            if ratio > best {
                best = ratio;
            }
        }
    }
    best
}

/// `F(x) = min(1, max(0, min_a f(a) + L d(x, a)))` where `L` is the
/// Lipschitz constant of `f`. Agrees with `f` on its domain.
pub fn mcshane_extend(space: &FiniteMetricSpace, f: &ScalarMap) -> Result<ScalarMap> {
    if f.is_empty() {
        return Err(Error::EmptyDomain);
    }
    for x in f.domain() {
        if x >= space.len() {
            return Err(Error::UnknownLabel(format!("point {x}")));
        }
    }
    let l = lipschitz_constant(space, f);
    let values = (0..space.len())
        .map(|x| {
            let raw = f
                .iter()
                .map(|(a, fa)| fa + &l * space.d(x, a))
                .min()
                .expect("domain is nonempty");
            (x, raw.clamp(Rational::zero(), Rational::one()))
        })
        .collect();
    Ok(ScalarMap { values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn table(labels: &[&str], rows: &[&[Rational]]) -> DistanceTable {
        DistanceTable {
            labels: labels.iter().map(|s| s.to_string()).collect(),
            dist: rows.iter().map(|r| r.to_vec()).collect(),
        }
    }

    fn path() -> FiniteMetricSpace {
        let (z, o, t) = (int(0), int(1), int(2));
        FiniteMetricSpace::new(table(
            &["a", "b", "c"],
            &[
                &[z.clone(), o.clone(), t.clone()],
                &[o.clone(), z.clone(), o.clone()],
                &[t, o, z],
            ],
        ))
        .unwrap()
    }

    #[test]
    fn validation() {
        let u = FiniteMetricSpace::uniform(&["a", "b", "c"]);
        assert!(validate_metric(&u.table()).valid);

        let (z, o, t) = (int(0), int(1), int(3));
        let bad = table(
            &["a", "b", "c"],
            &[
                &[z.clone(), o.clone(), t.clone()],
                &[o.clone(), z.clone(), o.clone()],
                &[t, o.clone(), z.clone()],
            ],
        );
        assert_eq!(
            validate_metric(&bad).violation,
            Some(MetricViolation::Triangle {
                x: "a".into(),
                y: "b".into(),
                z: "c".into()
            })
        );
        let asym = table(&["a", "b"], &[&[z.clone(), o.clone()], &[int(2), z]]);
        assert!(matches!(
            validate_metric(&asym).violation,
            Some(MetricViolation::Asymmetric { .. })
        ));
        assert!(FiniteMetricSpace::new(asym).is_err());
    }

    #[test]
    fn distance_to_sets() {
        let p = path();
        assert_eq!(dist_to_set(&p, 0, &PointSet::new()), int(1));
        assert_eq!(dist_to_set(&p, 0, &PointSet::from([0, 2])), int(0));
        assert_eq!(dist_to_set(&p, 1, &PointSet::from([0, 2])), int(1));
    }

    #[test]
    fn bounding() {
        let p = bound_metric(&path());
        assert_eq!(*p.d(0, 2), int(1));
        assert_eq!(*p.d(0, 1), int(1));
        assert!(validate_metric(&p.table()).valid);
        let half = FiniteMetricSpace::new(table(
            &["a", "b"],
            &[&[int(0), rat(1, 2)], &[rat(1, 2), int(0)]],
        ))
        .unwrap();
        assert_eq!(bound_metric(&half), half);
    }

    #[test]
    fn product() {
        let u = FiniteMetricSpace::uniform(&["a", "b"]);
        let ms = vec![u.clone(), u.clone(), u.clone()];
        assert_eq!(
            product_distance(&[0, 1, 0], &[0, 1, 0], &ms).unwrap().value,
            int(0)
        );
        assert_eq!(
            product_distance(&[0, 0, 0], &[0, 1, 0], &ms).unwrap().value,
            rat(1, 4)
        );
        let d = product_distance(&[0, 0, 0], &[1, 0, 1], &ms).unwrap();
        assert_eq!(d.value, rat(5, 8));
        assert_eq!(d.tail_bound, rat(1, 8));
        assert_eq!(
            product_distance(&[0], &[0, 1], &ms),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        );
        let big = vec![path()];
        assert_eq!(
            product_distance(&[0], &[2], &big),
            Err(Error::UnboundedMetric { level: 1 })
        );
    }

    #[test]
    fn mcshane() {
        let u = FiniteMetricSpace::uniform(&["a", "b", "c"]);
        let f = ScalarMap::new(BTreeMap::from([(0, rat(1, 2))])).unwrap();
        let g = mcshane_extend(&u, &f).unwrap();
        assert!(g.iter().all(|(_, v)| *v == rat(1, 2)));

        let f = ScalarMap::new(BTreeMap::from([(0, int(0)), (1, int(1))])).unwrap();
        let g = mcshane_extend(&u, &f).unwrap();
        assert_eq!(g.get(2), Some(&int(1)));
        assert_eq!(g.get(0), Some(&int(0)));
        assert_eq!(g.get(1), Some(&int(1)));
        assert_eq!(
            mcshane_extend(&u, &ScalarMap::default()),
            Err(Error::EmptyDomain)
        );
    }

    #[test]
    fn json_round_trip() {
        let p = path();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"labels":["a","b","c"],"dist":[["0/1","1/1","2/1"],["1/1","0/1","1/1"],["2/1","1/1","0/1"]]}"#
        );
        assert_eq!(serde_json::from_str::<FiniteMetricSpace>(&s).unwrap(), p);
    }
}
