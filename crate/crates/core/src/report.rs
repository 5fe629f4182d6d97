//! The table of topological properties of the three hedgehog topologies,
//! with a live check behind every cell a finite computation can witness.
//!
//! Cells for uncountably many spines, and for properties that quantify over
//! all Cauchy sequences, closed sets or paths, are carried as documented
//! values only.

use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hedgehog::balls::union_of;
use crate::hedgehog::{
    ball, cube_ball_at_apex, cube_distance, distance, epsilon_net, BallKind, Point, SpineUniverse,
};
use crate::rational::{self, rat, Rational};
use crate::sample::Sampler;
use crate::sets::classify::apex_radius;
use crate::sets::{
    classify_open, closure, extract_finite_subcover, fu_witness, is_closed, is_open,
    refute_countable_base, HedgehogSet, Interval, IntervalTrace, TopologyKind,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    ArcwiseConnected,
    Compact,
    Complete,
    FirstCountable,
    FrechetUrysohn,
    Hausdorff,
    LocallyCompact,
    Metrizable,
    Normal,
    Regular,
    SecondCountable,
    Separable,
    T1,
    TotallyBounded,
}

impl Property {
    pub const ALL: [Property; 14] = [
        Property::ArcwiseConnected,
        Property::Compact,
        Property::Complete,
        Property::FirstCountable,
        Property::FrechetUrysohn,
        Property::Hausdorff,
        Property::LocallyCompact,
        Property::Metrizable,
        Property::Normal,
        Property::Regular,
        Property::SecondCountable,
        Property::Separable,
        Property::T1,
        Property::TotallyBounded,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::ArcwiseConnected => "Arcwise connected",
            Property::Compact => "Compact",
            Property::Complete => "Complete",
            Property::FirstCountable => "First countable",
            Property::FrechetUrysohn => "Frechet-Urysohn",
            Property::Hausdorff => "Hausdorff",
            Property::LocallyCompact => "Locally compact",
            Property::Metrizable => "Metrizable",
            Property::Normal => "Normal",
            Property::Regular => "Regular",
            Property::SecondCountable => "Second countable",
            Property::Separable => "Separable",
            Property::T1 => "T1",
            Property::TotallyBounded => "Totally bounded",
        }
    }

    /// Row of the table: for quotient, metric and compact, the verdicts for
    /// finitely many, countably many and uncountably many spines.
    fn row(self) -> [&'static str; 3] {
        match self {
            Property::ArcwiseConnected => ["+++", "+++", "+++"],
            Property::Compact => ["+--", "+--", "+++"],
            Property::Complete => ["+  ", "+++", "++ "],
            Property::FirstCountable => ["+--", "+++", "++-"],
            Property::FrechetUrysohn => ["+++", "+++", "+++"],
            Property::Hausdorff => ["+++", "+++", "+++"],
            Property::LocallyCompact => ["+--", "+--", "+++"],
            Property::Metrizable => ["+--", "+++", "++-"],
            Property::Normal => ["+++", "+++", "+++"],
            Property::Regular => ["+++", "+++", "+++"],
            Property::SecondCountable => ["+--", "++-", "++-"],
            Property::Separable => ["++-", "++-", "++-"],
            Property::T1 => ["+++", "+++", "+++"],
            Property::TotallyBounded => ["+  ", "+--", "++ "],
        }
    }

    /// Whether some finite computation bears on this property at all.
    fn checkable(self) -> bool {
        !matches!(
            self,
            Property::ArcwiseConnected | Property::Complete | Property::Normal | Property::Regular
        )
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Finite,
    Countable,
    Uncountable,
}

impl Regime {
    pub const ALL: [Regime; 3] = [Regime::Finite, Regime::Countable, Regime::Uncountable];
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Finite => "finite",
            Regime::Countable => "countable",
            Regime::Uncountable => "uncountable",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    #[serde(rename = "+")]
    Holds,
    #[serde(rename = "-")]
    Fails,
    /// No entry in the table.
    #[serde(rename = "")]
    Blank,
    /// A check ran but its witness did not go through.
    #[serde(rename = "?")]
    Inconclusive,
}

impl Verdict {
    fn from_char(c: char) -> Self {
        match c {
            '+' => Verdict::Holds,
            '-' => Verdict::Fails,
            _ => Verdict::Blank,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Verdict::Holds => "+",
            Verdict::Fails => "-",
            Verdict::Blank => " ",
            Verdict::Inconclusive => "?",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evidence {
    ExecutableWitness,
    DocumentedOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportCell {
    pub property: Property,
    pub topology: TopologyKind,
    pub regime: Regime,
    pub verdict: Verdict,
    pub evidence: Evidence,
    /// What the live check found; absent for documented cells.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observed: Option<Verdict>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl ReportCell {
    pub fn contradicts(&self) -> bool {
        self.observed.is_some_and(|o| o != self.verdict)
    }
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    /// Spine counts tried for the finite regime.
    pub finite_sizes: Vec<u64>,
    pub seed: u64,
    /// Records a wrong table entry, to check that the report notices.
    pub inject_fault: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            finite_sizes: vec![1, 2, 3, 5],
            seed: 0x5EED,
            inject_fault: false,
        }
    }
}

/// The cell whose entry `inject_fault` flips.
pub const FAULT_CELL: (Property, TopologyKind, Regime) =
    (Property::Separable, TopologyKind::Metric, Regime::Countable);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub cells: Vec<ReportCell>,
}

impl Report {
    pub fn contradictions(&self) -> impl Iterator<Item = &ReportCell> {
        self.cells.iter().filter(|c| c.contradicts())
    }

    pub fn ok(&self) -> bool {
        self.contradictions().next().is_none()
    }

    pub fn cell(&self, p: Property, t: TopologyKind, r: Regime) -> Option<&ReportCell> {
        self.cells
            .iter()
            .find(|c| c.property == p && c.topology == t && c.regime == r)
    }

    /// Plain-text table. A `*` marks a cell confirmed by a live check, `!`
    /// one the check contradicts.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{:<20}| {:<12}| {:<12}| {:<12}\n",
            "", "quotient", "metric", "compact"
        ));
        out.push_str(&format!(
            "{:<20}| {:<12}| {:<12}| {:<12}\n",
            "spines", "fin cnt unc", "fin cnt unc", "fin cnt unc"
        ));
        for p in Property::ALL {
            out.push_str(&format!("{:<20}", p.name()));
            for t in TopologyKind::ALL {
                out.push_str("| ");
                for r in Regime::ALL {
                    let c = self.cell(p, t, r).expect("full table");
                    let mark = if c.contradicts() {
                        "!"
                    } else if c.observed.is_some() {
                        "*"
                    } else {
                        " "
                    };
                    out.push_str(&format!("{}{}  ", c.verdict.symbol(), mark));
                }
            }
            out.push('\n');
        }
        let checked = self.cells.iter().filter(|c| c.observed.is_some()).count();
        out.push_str(&format!(
            "\n{checked} of {} cells checked live (*); the rest are documented only.\n",
            self.cells.len()
        ));
        for c in self.contradictions() {
            out.push_str(&format!(
                "CONTRADICTION {} / {} / {}: table says {:?}, check found {:?}: {}\n",
                c.property,
                c.topology,
                c.regime,
                c.verdict,
                c.observed.unwrap_or(Verdict::Inconclusive),
                c.detail
            ));
        }
        out
    }
}

pub fn build_report(opts: &ReportOptions) -> Report {
    let mut cells = Vec::new();
    for (pi, p) in Property::ALL.into_iter().enumerate() {
        let row = p.row();
        for (ti, t) in TopologyKind::ALL.into_iter().enumerate() {
            let entries: Vec<char> = row[ti].chars().collect();
            for (ri, r) in Regime::ALL.into_iter().enumerate() {
                let mut verdict = Verdict::from_char(entries[ri]);
                if opts.inject_fault && (p, t, r) == FAULT_CELL {
                    verdict = Verdict::Fails;
                }
                let seed = opts.seed ^ ((pi as u64) << 16 | (ti as u64) << 8 | ri as u64);
                let live =
                    if verdict == Verdict::Blank || r == Regime::Uncountable || !p.checkable() {
                        None
                    } else {
                        run_cell(p, t, r, &opts.finite_sizes, seed)
                    };
                let (evidence, observed, detail) = match live {
                    Some((v, d)) => (Evidence::ExecutableWitness, Some(v), d),
                    None => (Evidence::DocumentedOnly, None, String::new()),
                };
                cells.push(ReportCell {
                    property: p,
                    topology: t,
                    regime: r,
                    verdict,
                    evidence,
                    observed,
                    detail,
                });
            }
        }
    }
    Report { cells }
}

type Outcome = (Verdict, String);

fn run_cell(p: Property, t: TopologyKind, r: Regime, sizes: &[u64], seed: u64) -> Option<Outcome> {
    let universes: Vec<SpineUniverse> = match r {
        Regime::Finite => sizes.iter().map(|&k| SpineUniverse::Finite(k)).collect(),
        Regime::Countable => vec![SpineUniverse::CountablyInfinite],
        Regime::Uncountable => return None,
    };
    let mut first: Option<Outcome> = None;
    for u in universes {
        let mut s = Sampler::new(seed);
        let outcome = match check(p, t, u, &mut s) {
            Ok(Some(o)) => o,
            Ok(None) => return None,
            Err(e) => (Verdict::Inconclusive, format!("in {u}: check raised {e}")),
        };
        match &first {
            None => first = Some(outcome),
            Some((v, _)) if *v != outcome.0 => {
                return Some((Verdict::Inconclusive, format!("in {u}: {}", outcome.1)))
            }
            Some(_) => {}
        }
    }
    let (v, d) = first?;
    if r == Regime::Finite {
        let ks: Vec<String> = sizes.iter().map(u64::to_string).collect();
        Some((v, format!("{d} (spines: {})", ks.join(", "))))
    } else {
        Some((v, d))
    }
}

fn check(
    p: Property,
    t: TopologyKind,
    u: SpineUniverse,
    s: &mut Sampler,
) -> Result<Option<Outcome>> {
    use Property::*;
    use TopologyKind::{Metric, Quotient};
    let inf = !u.is_finite();
    let outcome = match p {
        Property::Compact | LocallyCompact if !inf || t == TopologyKind::Compact => {
            subcover_check(u, t, s)?
        }
        Property::Compact => noncompact_cover(u, t)?,
        LocallyCompact => closed_discrete_in_neighborhood(u, t, s)?,
        FirstCountable | Metrizable | SecondCountable if inf && t == Quotient => {
            refute_check(p, s)?
        }
        FirstCountable => local_base_check(u, t, s, false)?,
        SecondCountable => local_base_check(u, t, s, true)?,
        Metrizable if inf && t == TopologyKind::Compact => cube_metric_check(s)?,
        Metrizable => metric_check(u, s)?,
        FrechetUrysohn => fu_check(u, t, s)?,
        Hausdorff => hausdorff_check(u, t, s)?,
        Separable => dense_check(u, t, s)?,
        T1 => t1_check(u, t, s)?,
        TotallyBounded if !inf => net_check(u)?,
        TotallyBounded if t == Metric => unbounded_check()?,
        TotallyBounded if t == TopologyKind::Compact => cube_net_check()?,
        _ => return Ok(None),
    };
    Ok(Some(outcome))
}

fn holds(detail: impl Into<String>) -> Outcome {
    (Verdict::Holds, detail.into())
}

fn fails(detail: impl Into<String>) -> Outcome {
    (Verdict::Fails, detail.into())
}

fn inconclusive(detail: impl Into<String>) -> Outcome {
    (Verdict::Inconclusive, detail.into())
}

fn singleton(universe: SpineUniverse, p: &Point) -> Result<HedgehogSet> {
    match p.spine() {
        None => Ok(HedgehogSet::apex_only(universe)),
        Some(i) => HedgehogSet::spine_trace(
            universe,
            i,
            IntervalTrace::single(Interval::point(p.height().clone())?),
        ),
    }
}

/// An open neighborhood of the apex: a basic one, widened by an open set.
fn apex_neighborhood(u: SpineUniverse, t: TopologyKind, s: &mut Sampler) -> Result<HedgehogSet> {
    let base = s.apex_neighborhood(u, t);
    base.union(&s.open_set(u, t))
}

fn metric_axioms(
    u: SpineUniverse,
    s: &mut Sampler,
    n: usize,
    d: fn(&Point, &Point) -> Rational,
) -> Option<String> {
    for _ in 0..n {
        let (p, q, r) = (s.point(u), s.point(u), s.point(u));
        let (pq, qp, qr, pr) = (d(&p, &q), d(&q, &p), d(&q, &r), d(&p, &r));
        if pq.is_negative() || pq != qp || pq.is_zero() != (p == q) || pr > &pq + &qr {
            return Some(format!("axiom fails at {p}, {q}, {r}"));
        }
    }
    None
}

fn coincide(u: SpineUniverse, s: &mut Sampler, n: usize) -> Option<String> {
    for _ in 0..n {
        let a = s.set(u);
        let v = classify_open(&a);
        if v.quotient != v.metric || v.metric != v.compact {
            return Some(format!("topologies differ on {a}"));
        }
    }
    None
}

fn subcover_check(u: SpineUniverse, t: TopologyKind, s: &mut Sampler) -> Result<Outcome> {
    const STREAMS: usize = 20;
    if let Some(why) = if u.is_finite() {
        coincide(u, s, 100)
    } else {
        None
    } {
        return Ok(inconclusive(why));
    }
    for _ in 0..STREAMS {
        let stream = s.covering_stream(u);
        if let Some(bad) = stream.iter().find(|x| !is_open(x, t)) {
            return Ok(inconclusive(format!("stream member {bad} is not {t}-open")));
        }
        let len = stream.len();
        let sub = match extract_finite_subcover(stream, len) {
            Ok(sub) => sub,
            Err(e) => return Ok(fails(format!("no finite subcover: {e}"))),
        };
        let union = sub
            .sets
            .iter()
            .try_fold(HedgehogSet::empty(u), |acc, x| acc.union(x))?;
        if union != HedgehogSet::full(u) {
            return Ok(inconclusive("extracted subfamily does not cover"));
        }
    }
    Ok(holds(format!(
        "{STREAMS} random open covers each reduced to a verified finite subcover"
    )))
}

/// `p([0,1) x I)` together with the tails `p((1/2, 1] x {n})`.
fn noncompact_cover(u: SpineUniverse, t: TopologyKind) -> Result<Outcome> {
    const PREFIX: u64 = 32;
    let half = rat(1, 2);
    let body = HedgehogSet::initial_segment(u, &Rational::one(), false)?;
    if !is_open(&body, t) {
        return Ok(inconclusive(format!("{body} is not {t}-open")));
    }
    let mut union = body;
    for n in 1..=PREFIX {
        let tail = HedgehogSet::tail(u, n, &half, false)?;
        if !is_open(&tail, t) {
            return Ok(inconclusive(format!("{tail} is not {t}-open")));
        }
        union = union.union(&tail)?;
        let top = Point::new(Rational::one(), n)?;
        if !union.member(&top) || union.member(&Point::new(Rational::one(), n + 1)?) {
            return Ok(inconclusive(format!("prefix {n} misbehaves at height 1")));
        }
    }
    Ok(fails(format!(
        "the open cover p([0,1) x I) plus tails p((1/2,1] x {{n}}) covers J, and its first N members miss (1, N+1) for every N <= {PREFIX}"
    )))
}

/// Inside a random apex neighborhood `U`, the points at half the initial
/// radius of each spine form an infinite closed discrete set.
fn closed_discrete_in_neighborhood(
    u: SpineUniverse,
    t: TopologyKind,
    s: &mut Sampler,
) -> Result<Outcome> {
    const TRIALS: usize = 20;
    let two = rational::int(2);
    for _ in 0..TRIALS {
        let nb = s.apex_neighborhood(u, t);
        let half = |tr: &IntervalTrace| -> Result<IntervalTrace> {
            Ok(IntervalTrace::single(Interval::point(
                tr.initial_radius() / &two,
            )?))
        };
        let exceptions = nb
            .exceptions()
            .iter()
            .map(|(k, tr)| Ok((*k, half(tr)?)))
            .collect::<Result<_>>()?;
        let d = HedgehogSet::new(u, false, half(nb.default_trace())?, exceptions)?;
        if !d.is_subset(&nb)? || !is_closed(&d, t) || d.default_trace().is_empty() {
            return Ok(inconclusive(format!(
                "{d} is not an infinite closed subset of {nb}"
            )));
        }
        for spine in 1..=8 {
            let h = d.trace(spine).intervals()[0].lo().clone();
            let p = Point::new(h.clone(), spine)?;
            let around = ball(&p, &(&h / rational::int(4)), BallKind::Open, u)?;
            if around.intersection(&d)? != singleton(u, &p)? {
                return Ok(inconclusive(format!("{p} is not isolated in {d}")));
            }
        }
    }
    Ok(fails(format!(
        "in {TRIALS} random apex neighborhoods U, an infinite closed discrete subset of U rules out a compact neighborhood inside U"
    )))
}

fn refute_check(p: Property, s: &mut Sampler) -> Result<Outcome> {
    const LISTS: usize = 30;
    let u = SpineUniverse::CountablyInfinite;
    for _ in 0..LISTS {
        let n = 1 + s.below(20) as usize;
        let cands: Vec<HedgehogSet> = (0..n)
            .map(|_| apex_neighborhood(u, TopologyKind::Quotient, s))
            .collect::<Result<_>>()?;
        let w = refute_countable_base(&cands)?;
        if !is_open(&w, TopologyKind::Quotient) || !w.contains_apex() {
            return Ok(inconclusive(format!("{w} is not an apex neighborhood")));
        }
        for c in &cands {
            if c.is_subset(&w)? {
                return Ok(inconclusive(format!("candidate {c} fits inside {w}")));
            }
        }
    }
    let why = match p {
        Property::FirstCountable => "",
        Property::Metrizable => "; a metrizable space would be first countable",
        _ => "; a second countable space would be first countable",
    };
    Ok(fails(format!(
        "for {LISTS} random lists of apex neighborhoods, a diagonal neighborhood contains none of them{why}"
    )))
}

fn dyadic_at_most(bound: &Rational) -> Rational {
    let mut r = Rational::one();
    while &r > bound {
        r /= rational::int(2);
    }
    r
}

/// A member of the countable base inside `nb` containing `x`: a ball of
/// dyadic radius about a point with rational height, or a basic apex
/// neighborhood with rational parameters.
fn base_element(x: &Point, nb: &HedgehogSet, t: TopologyKind) -> Result<Option<HedgehogSet>> {
    let u = nb.universe();
    let Some(spine) = x.spine() else {
        if t == TopologyKind::Compact && !u.is_finite() {
            // J minus the tails [1/n, 1] on the spines 1..=m.
            let m = nb.exceptions().keys().max().copied().unwrap_or(0);
            let r = nb
                .exceptions()
                .values()
                .map(IntervalTrace::initial_radius)
                .min()
                .unwrap_or_else(Rational::one);
            if !r.is_positive() {
                return Ok(None);
            }
            let step = dyadic_at_most(&r);
            let b = HedgehogSet::without_closed_tails(u, (1..=m).map(|j| (j, step.clone())))?;
            return Ok(Some(b));
        }
        let r = apex_radius(nb);
        if !r.is_positive() {
            return Ok(None);
        }
        return Ok(Some(ball(x, &dyadic_at_most(&r), BallKind::Open, u)?));
    };
    let h = x.height();
    let Some(iv) = nb.trace(spine).intervals().iter().find(|i| i.contains(h)) else {
        return Ok(None);
    };
    let mut room = h.clone();
    if iv.lo() < h {
        room = room.min(h - iv.lo());
    } else {
        return Ok(None);
    }
    if iv.hi() > h {
        room = room.min(iv.hi() - h);
    } else if !(iv.hi().is_one() && iv.hi_closed()) {
        return Ok(None);
    }
    // Half the room keeps the open ball clear of both ends.
    let r = dyadic_at_most(&(room / rational::int(2)));
    Ok(Some(ball(x, &r, BallKind::Open, u)?))
}

fn local_base_check(
    u: SpineUniverse,
    t: TopologyKind,
    s: &mut Sampler,
    global: bool,
) -> Result<Outcome> {
    const TRIALS: usize = 60;
    for i in 0..TRIALS {
        let (x, nb) = if global {
            let nb = s.open_set(u, t);
            let x = if nb.contains_apex() && i % 2 == 0 {
                Point::apex()
            } else {
                match (0..50)
                    .map(|_| s.point(u))
                    .find(|p| nb.member(p) && !p.is_apex())
                {
                    Some(x) => x,
                    None => continue,
                }
            };
            (x, nb)
        } else {
            let x = if i % 2 == 0 {
                Point::apex()
            } else {
                s.point(u)
            };
            let nb = if x.is_apex() {
                apex_neighborhood(u, t, s)?
            } else {
                s.neighborhood(&x, u, t)
            };
            (x, nb)
        };
        if !nb.member(&x) || !is_open(&nb, t) {
            continue;
        }
        let Some(b) = base_element(&x, &nb, t)? else {
            return Ok(inconclusive(format!("no base element at {x} inside {nb}")));
        };
        if !b.member(&x) || !is_open(&b, t) || !b.is_subset(&nb)? {
            return Ok(inconclusive(format!(
                "base element {b} at {x} does not fit {nb}"
            )));
        }
    }
    let what = if global {
        "every sampled open set is a union of members of one countable family"
    } else {
        "every sampled neighborhood contains a member of a countable base at its point"
    };
    Ok(holds(format!(
        "{what} (dyadic balls about rational points; basic apex neighborhoods with rational parameters)"
    )))
}

fn metric_check(u: SpineUniverse, s: &mut Sampler) -> Result<Outcome> {
    if let Some(why) = metric_axioms(u, s, 1000, distance) {
        return Ok(inconclusive(why));
    }
    if u.is_finite() {
        if let Some(why) = coincide(u, s, 200) {
            return Ok(inconclusive(why));
        }
        return Ok(holds(
            "d passes the metric axioms on 1000 triples and the three topologies coincide on 200 sets",
        ));
    }
    for _ in 0..50 {
        let b = ball(&s.point(u), &s.unit_positive(), BallKind::Open, u)?;
        if !is_open(&b, TopologyKind::Metric) {
            return Ok(inconclusive(format!("ball {b} is not metric-open")));
        }
    }
    Ok(holds(
        "d passes the metric axioms on 1000 triples and its balls are open",
    ))
}

/// The compact topology is induced by the cube metric on axis vectors.
fn cube_metric_check(s: &mut Sampler) -> Result<Outcome> {
    let u = SpineUniverse::CountablyInfinite;
    if let Some(why) = metric_axioms(u, s, 1000, cube_distance) {
        return Ok(inconclusive(why));
    }
    for _ in 0..40 {
        let eps = s.unit_positive();
        let cb = cube_ball_at_apex(u, &eps)?;
        if !is_open(&cb, TopologyKind::Compact) {
            return Ok(inconclusive(format!("cube ball {cb} is not compact-open")));
        }
        let nb = s.apex_neighborhood(u, TopologyKind::Compact);
        let eps = nb
            .exceptions()
            .iter()
            .map(|(j, tr)| tr.initial_radius() * rational::inv_pow2(*j as u32))
            .min()
            .unwrap_or_else(Rational::one);
        if !cube_ball_at_apex(u, &eps)?.is_subset(&nb)? {
            return Ok(inconclusive(format!("no cube ball inside {nb}")));
        }
    }
    Ok(holds(
        "the cube metric sum |x_i - y_i| / 2^i passes the axioms, its apex balls are compact-open and every basic apex neighborhood contains one",
    ))
}

fn fu_check(u: SpineUniverse, t: TopologyKind, s: &mut Sampler) -> Result<Outcome> {
    const SETS: usize = 60;
    let mut witnessed = 0;
    for _ in 0..SETS {
        let a = s.set(u);
        let cl = closure(&a, t);
        let x = if cl.contains_apex() && s.chance(0.5) {
            Point::apex()
        } else {
            match (0..50).map(|_| s.point(u)).find(|p| cl.member(p)) {
                Some(x) => x,
                None => continue,
            }
        };
        let seq = fu_witness(&a, &x, t)?;
        for k in 1..=20 {
            if !a.member(&seq.point(k)) {
                return Ok(inconclusive(format!("term {k} toward {x} leaves {a}")));
            }
        }
        for _ in 0..10 {
            let nb = s.neighborhood(&x, u, t);
            let Some(k0) = seq.eventually_inside(&nb) else {
                return Ok(inconclusive(format!(
                    "sequence toward {x} never settles in {nb}"
                )));
            };
            if (k0..k0 + 20).any(|k| !nb.member(&seq.point(k))) {
                return Ok(inconclusive(format!(
                    "sequence toward {x} leaves {nb} after {k0}"
                )));
            }
        }
        witnessed += 1;
    }
    if witnessed == 0 {
        return Ok(inconclusive("no closure points sampled"));
    }
    Ok(holds(format!(
        "{witnessed} closure points reached by explicit sequences from their sets"
    )))
}

fn hausdorff_check(u: SpineUniverse, t: TopologyKind, s: &mut Sampler) -> Result<Outcome> {
    const PAIRS: usize = 60;
    for i in 0..PAIRS {
        let x = if i % 3 == 0 {
            Point::apex()
        } else {
            s.point(u)
        };
        let y = s.point(u);
        if x == y {
            continue;
        }
        let (x, y) = if y.is_apex() { (y, x) } else { (x, y) };
        let (a, b) = if x.is_apex() {
            let spine = y.spine().expect("distinct from the apex");
            let cut = y.height() / rational::int(2);
            (
                HedgehogSet::without_closed_tails(u, [(spine, cut.clone())])?,
                HedgehogSet::tail(u, spine, &cut, false)?,
            )
        } else {
            let r = (distance(&x, &y) / rational::int(2))
                .min(x.height().clone())
                .min(y.height().clone());
            (
                ball(&x, &r, BallKind::Open, u)?,
                ball(&y, &r, BallKind::Open, u)?,
            )
        };
        let ok = a.member(&x)
            && b.member(&y)
            && is_open(&a, t)
            && is_open(&b, t)
            && a.intersection(&b)?.is_empty();
        if !ok {
            return Ok(inconclusive(format!(
                "{a} and {b} do not separate {x} and {y}"
            )));
        }
    }
    Ok(holds(format!(
        "{PAIRS} random pairs separated by disjoint open sets"
    )))
}

/// The dyadic point of least level inside `tr`.
fn dyadic_in(tr: &IntervalTrace) -> Option<(Rational, u32)> {
    let iv = tr.intervals().first()?;
    for m in 0..64u32 {
        let scale = rational::int(1) / rational::inv_pow2(m);
        let k = rational::floor_int(&(iv.lo() * &scale)) + 1;
        let q = Rational::from_integer(k) / &scale;
        if iv.contains(&q) {
            return Some((q, m));
        }
    }
    None
}

/// Enumerates the apex and the dyadic heights on each spine, and finds an
/// enumerated point in every sampled nonempty open set.
fn dense_check(u: SpineUniverse, t: TopologyKind, s: &mut Sampler) -> Result<Outcome> {
    const SETS: usize = 60;
    let mut deepest = 0;
    for _ in 0..SETS {
        let a = s.open_set(u, t);
        if a.is_empty() || a.contains_apex() {
            continue;
        }
        let spines = HedgehogSet::probe_spines([&a]);
        let found = spines.iter().find_map(|&j| {
            let (q, m) = dyadic_in(a.trace(j))?;
            Some((Point::new(q, j).ok()?, m.max(j as u32)))
        });
        match found {
            Some((p, m)) if a.member(&p) => deepest = deepest.max(m),
            _ => return Ok(inconclusive(format!("no enumerated point in {a}"))),
        }
    }
    Ok(holds(format!(
        "every sampled nonempty open set meets the countable set of dyadic points (enumeration depth <= {deepest})"
    )))
}

fn t1_check(u: SpineUniverse, t: TopologyKind, s: &mut Sampler) -> Result<Outcome> {
    for i in 0..60 {
        let x = if i == 0 { Point::apex() } else { s.point(u) };
        let one = singleton(u, &x)?;
        if closure(&one, t) != one || !is_closed(&one, t) {
            return Ok(inconclusive(format!("{{{x}}} is not closed")));
        }
    }
    Ok(holds(
        "60 sampled singletons, the apex among them, are closed",
    ))
}

fn grid(u: SpineUniverse, spines: u64) -> impl Iterator<Item = Point> {
    let top = match u {
        SpineUniverse::Finite(k) => k.min(spines),
        SpineUniverse::CountablyInfinite => spines,
    };
    std::iter::once(Point::apex()).chain(
        (1..=top).flat_map(|j| (1..=64).map(move |k| Point::new(rat(k, 64), j).expect("grid"))),
    )
}

fn net_check(u: SpineUniverse) -> Result<Outcome> {
    for eps in [rat(1, 2), rat(1, 4), rat(1, 8)] {
        let net = epsilon_net(u, &eps)?;
        let covered = union_of(u, &net)?;
        if covered != HedgehogSet::full(u) {
            return Ok(inconclusive(format!("the {eps}-net misses part of J")));
        }
        for p in grid(u, u64::MAX) {
            if !net.iter().any(|b| distance(&b.center, &p) < eps) {
                return Ok(inconclusive(format!("{p} is not within {eps} of the net")));
            }
        }
    }
    Ok(holds("finite eps-nets for eps = 1/2, 1/4, 1/8 cover J"))
}

fn unbounded_check() -> Result<Outcome> {
    let u = SpineUniverse::CountablyInfinite;
    match epsilon_net(u, &rat(1, 2)) {
        Err(Error::NotTotallyBounded) => {}
        other => return Ok(inconclusive(format!("epsilon_net returned {other:?}"))),
    }
    let tops: Vec<Point> = (1..=32)
        .map(|j| Point::new(Rational::one(), j))
        .collect::<Result<_>>()?;
    for (i, p) in tops.iter().enumerate() {
        for q in &tops[i + 1..] {
            if distance(p, q) != rational::int(2) {
                return Ok(inconclusive(format!("d({p}, {q}) is not 2")));
            }
        }
    }
    Ok(fails(
        "the tops (1, j) are pairwise 2 apart, so no finite family of 1/2-balls covers them",
    ))
}

fn cube_net_check() -> Result<Outcome> {
    let u = SpineUniverse::CountablyInfinite;
    for e in [2i64, 4, 8] {
        let eps = rat(1, e);
        // Beyond spine m every point is within 2^-j < eps of the apex.
        let m = (1u64..)
            .find(|&j| rational::inv_pow2(j as u32) < eps)
            .expect("exists");
        let mut net = vec![Point::apex()];
        for j in 1..=m {
            for k in 1..=e {
                net.push(Point::new(rat(k, e), j)?);
            }
        }
        for p in grid(u, m + 4) {
            if !net.iter().any(|c| cube_distance(c, &p) < eps) {
                return Ok(inconclusive(format!(
                    "{p} is not within {eps} of the cube net"
                )));
            }
        }
        let n = net.len().to_u64().unwrap_or(u64::MAX);
        if n == 0 {
            return Ok(inconclusive("empty net"));
        }
    }
    Ok(holds(
        "in the cube metric, finite nets for eps = 1/2, 1/4, 1/8 reach every grid point",
    ))
}
