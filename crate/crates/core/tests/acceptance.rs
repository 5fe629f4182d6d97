//! Acceptance suite. Runs every criterion at full size and prints one
//! PASS/FAIL line each; exits nonzero if any fails.

mod common;

use std::collections::HashMap;
use std::time::{Duration, Instant};

use common::{grid_closure_member, grid_points, INF};
use hedgehog::embeddings::{
    basis_check, check_refinement, check_separation, default_resolution, embed_real, int_to_spine,
    invert_real, kowalsky_embed, real_image_member, sigma_discrete_basis, stone_refine, PointPair,
    EXHAUSTIVE_LIMIT,
};
use hedgehog::extension::{hedgehog_extend, separate_via_extension, verify_extension, HedgehogMap};
use hedgehog::hedgehog::{ball, distance, epsilon_net, from_axes, leq, to_axes, BallKind};
use hedgehog::metricspace::{bound_metric, PointSet};
use hedgehog::rational::{int, rat};
use hedgehog::report::{build_report, Evidence, ReportOptions};
use hedgehog::sample::Sampler;
use hedgehog::sets::{
    classify_open, closure, extract_finite_subcover, is_open, refute_countable_base, TopologyKind,
};
use hedgehog::{Error, HedgehogSet, Point, Rational, SpineUniverse};
use num_traits::{Signed, Zero};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn universes() -> [SpineUniverse; 4] {
    [
        INF,
        SpineUniverse::Finite(1),
        SpineUniverse::Finite(3),
        SpineUniverse::Finite(8),
    ]
}

fn metric_axioms() -> Verdict {
    let start = Instant::now();
    let mut s = Sampler::new(1);
    for _ in 0..10_000 {
        let (p, q, r) = (s.point(INF), s.point(INF), s.point(INF));
        let d = distance(&p, &q);
        ensure(!d.is_negative(), || {
            format!("negative distance at {p}, {q}")
        })?;
        ensure(d == distance(&q, &p), || format!("asymmetric at {p}, {q}"))?;
        ensure(d.is_zero() == (p == q), || {
            format!("identity fails at {p}, {q}")
        })?;
        ensure(distance(&p, &r) <= &d + distance(&q, &r), || {
            format!("triangle fails at {p}, {q}, {r}")
        })?;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), || format!("took {t:?}"))?;
    Ok(format!("10^4 triples in {t:.2?}"))
}

fn order_isomorphism() -> Verdict {
    let mut s = Sampler::new(2);
    for _ in 0..1000 {
        let p = s.point(INF);
        ensure(from_axes(&to_axes(&p)) == p, || {
            format!("round trip fails at {p}")
        })?;
        let v = to_axes(&p);
        ensure(to_axes(&from_axes(&v)) == v, || {
            format!("inverse round trip fails at {p}")
        })?;
    }
    let mut comparable = 0;
    for i in 0..1000 {
        let p = s.point(INF);
        // Every other pair shares a spine so that both outcomes occur.
        let q = match (i % 2, p.spine()) {
            (0, Some(sp)) => Point::new(s.unit(), sp).unwrap(),
            _ => s.point(INF),
        };
        let ord = leq(&p, &q);
        comparable += usize::from(ord);
        ensure(ord == to_axes(&p).leq(&to_axes(&q)), || {
            format!("order differs at {p}, {q}")
        })?;
    }
    Ok(format!(
        "10^3 round trips; 10^3 pairs, {comparable} comparable"
    ))
}

fn subbase_classification() -> Verdict {
    let mut s = Sampler::new(3);
    for u in universes() {
        for kind in TopologyKind::ALL {
            for _ in 0..250 {
                let g = s.generator(u, kind);
                ensure(is_open(&g, kind), || {
                    format!("generator {g} is not {kind}-open")
                })?;
            }
        }
    }
    for _ in 0..1000 {
        let u = universes()[s.below(4) as usize];
        let a = s.set(u);
        let v = classify_open(&a);
        ensure(
            (!v.compact || v.metric) && (!v.metric || v.quotient),
            || format!("chain broken at {a}"),
        )?;
    }
    for _ in 0..1000 {
        let u = SpineUniverse::Finite(1 + s.below(8));
        let a = s.set(u);
        let v = classify_open(&a);
        ensure(v.quotient == v.metric && v.metric == v.compact, || {
            format!("finite verdicts differ at {a}")
        })?;
    }
    Ok(
        "10^3 generators per topology open; chain on 10^3 sets; finite collapse on 10^3 sets"
            .into(),
    )
}

fn ball_oracle() -> Verdict {
    let mut s = Sampler::dyadic(4);
    let mut checked = 0;
    for i in 0..100 {
        let u = universes()[i % 4];
        let c = if i % 10 == 0 {
            Point::apex()
        } else {
            s.point(u)
        };
        let r = s.unit_positive();
        let kind = if i % 2 == 0 {
            BallKind::Open
        } else {
            BallKind::Closed
        };
        let b = ball(&c, &r, kind, u).map_err(|e| e.to_string())?;
        for q in grid_points(&b) {
            let d = distance(&c, &q);
            let want = match kind {
                BallKind::Open => d < r,
                BallKind::Closed => d <= r,
            };
            ensure(b.member(&q) == want, || {
                format!("ball({c}, {r}) wrong at {q}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("10^2 balls, {checked} grid points"))
}

fn epsilon_nets() -> Verdict {
    for k in 1..=4 {
        let u = SpineUniverse::Finite(k);
        for eps in [rat(1, 2), rat(1, 4)] {
            let net = epsilon_net(u, &eps).map_err(|e| e.to_string())?;
            for q in std::iter::once(Point::apex()).chain(
                (1..=k).flat_map(|sp| (1..=64).map(move |j| Point::new(rat(j, 64), sp).unwrap())),
            ) {
                ensure(net.iter().any(|b| b.set.member(&q)), || {
                    format!("{q} uncovered by the {eps}-net of J({k})")
                })?;
            }
        }
    }
    ensure(
        epsilon_net(INF, &rat(1, 2)) == Err(Error::NotTotallyBounded),
        || "infinite universe did not raise NotTotallyBounded".into(),
    )?;
    Ok("k <= 4, eps in {1/2, 1/4} cover the grid; infinite universe refused".into())
}

fn on(h: Rational, z: i64) -> Point {
    Point::new(h, int_to_spine(z)).unwrap()
}

/// Pairs built from the description of the image, not from the map.
fn branch_suite() -> Vec<(PointPair, bool)> {
    let pair = |first, second| PointPair { first, second };
    let mut out = Vec::new();
    for n in -3i64..=3 {
        for h in [rat(1, 4), rat(1, 2), rat(2, 3)] {
            let c = int(1) - &h;
            out.push((pair(on(h.clone(), n), on(c.clone(), n)), true));
            out.push((pair(on(h.clone(), n), on(c.clone(), n - 1)), true));
            out.push((pair(on(h.clone(), n), on(c.clone(), n + 1)), false));
            out.push((pair(on(h.clone(), n), on(&c / int(2), n)), false));
        }
        out.push((pair(on(int(1), n), Point::apex()), true));
        out.push((pair(on(int(1), n), on(rat(1, 2), n)), false));
        out.push((pair(Point::apex(), on(int(1), n)), true));
        out.push((pair(Point::apex(), on(rat(1, 2), n)), false));
    }
    out.push((pair(Point::apex(), Point::apex()), false));
    out
}

fn real_embedding() -> Verdict {
    let mut s = Sampler::new(6);
    let mut seen: HashMap<PointPair, Rational> = HashMap::new();
    for _ in 0..1000 {
        let x = s.rational_in(-10, 10);
        let pair = embed_real(&x).map_err(|e| e.to_string())?;
        ensure(real_image_member(&pair), || {
            format!("image of {x} rejected")
        })?;
        ensure(invert_real(&pair).as_ref() == Ok(&x), || {
            format!("inversion fails at {x}")
        })?;
        if let Some(y) = seen.insert(pair, x.clone()) {
            ensure(y == x, || format!("{x} and {y} share an image"))?;
        }
    }
    let suite = branch_suite();
    for (pair, member) in &suite {
        ensure(real_image_member(pair) == *member, || {
            format!("membership wrong for {pair:?}")
        })?;
        match invert_real(pair) {
            Ok(x) => ensure(*member && embed_real(&x).unwrap() == *pair, || {
                format!("inversion of {pair:?} does not map back")
            })?,
            Err(_) => ensure(!member, || format!("member {pair:?} not inverted"))?,
        }
    }
    Ok(format!(
        "10^3 round trips, {} distinct images; branch suite of {} pairs",
        seen.len(),
        suite.len()
    ))
}

fn stone() -> Verdict {
    let mut s = Sampler::new(7);
    let mut slowest = Duration::ZERO;
    for _ in 0..100 {
        let n = 1 + s.below(12) as usize;
        let x = s.metric_space(n);
        let cover = s.cover(n);
        let start = Instant::now();
        let fam = stone_refine(&x, &cover, None).map_err(|e| e.to_string())?;
        let check = check_refinement(&x, &cover, &fam);
        slowest = slowest.max(start.elapsed());
        ensure(check.passed(), || format!("{:?}", check.failures))?;
    }
    ensure(slowest < Duration::from_secs(1), || {
        format!("slowest instance {slowest:?}")
    })?;

    let x = hedgehog::metricspace::FiniteMetricSpace::uniform(&["a", "b", "c"]);
    let cover = vec![PointSet::from([0, 1]), PointSet::from([1, 2])];
    let fam = stone_refine(&x, &cover, None).map_err(|e| e.to_string())?;
    let l2 = &fam.levels[1];
    ensure(fam.levels[0].members.is_empty(), || {
        "level 1 is not empty".into()
    })?;
    ensure(
        l2.member(0).map(|m| &m.set) == Some(&PointSet::from([0, 1])),
        || "V_{1,2} is not {a, b}".into(),
    )?;
    ensure(
        l2.member(1).map(|m| &m.set) == Some(&PointSet::from([2])),
        || "V_{2,2} is not {c}".into(),
    )?;
    Ok(format!(
        "10^2 instances, slowest {slowest:.2?}; 3-point example reproduced"
    ))
}

fn kowalsky() -> Verdict {
    let mut s = Sampler::new(8);
    let mut sampled = 0;
    for _ in 0..100 {
        let n = 1 + s.below(12) as usize;
        let x = bound_metric(&s.metric_space(n));
        let m = default_resolution(&x);
        let fams = sigma_discrete_basis(&x, Some(m)).map_err(|e| e.to_string())?;
        let failures = basis_check(&x, &fams, m);
        ensure(failures.is_empty(), || {
            format!("basis check fails: {failures:?}")
        })?;
        let emb = kowalsky_embed(&x, &fams).map_err(|e| e.to_string())?;
        let rep = check_separation(&emb, &x);
        ensure(rep.exhaustive == (n <= EXHAUSTIVE_LIMIT), || {
            "wrong search mode".into()
        })?;
        sampled += usize::from(!rep.exhaustive);
        ensure(
            rep.separates_points && rep.separates_points_and_closed_sets,
            || format!("no separation on {n} points: {:?}", rep.witness_failures),
        )?;
    }
    Ok(format!("10^2 spaces separated, {sampled} by sampling"))
}

fn extension() -> Verdict {
    let mut s = Sampler::new(9);
    for _ in 0..100 {
        let n = 1 + s.below(15) as usize;
        let k = 1 + s.below(6);
        let u = SpineUniverse::Finite(k);
        let x = s.metric_space(n);
        let mut dom = s.subset(n, 0.5);
        dom.insert(s.below(n as u64) as usize);
        let f: HedgehogMap = dom.iter().map(|&p| (p, s.point(u))).collect();
        let ext = hedgehog_extend(&x, &f, u).map_err(|e| e.to_string())?;
        let rep = verify_extension(&x, &ext, &f);
        ensure(rep.passed(), || format!("{rep:?}"))?;

        let fam = s.disjoint_family(n, k as usize);
        let us = separate_via_extension(&x, &fam).map_err(|e| e.to_string())?;
        for i in 0..fam.len() {
            ensure(fam[i].is_subset(&us[i]), || {
                format!("F_{i} not inside U_{i}")
            })?;
            for j in i + 1..fam.len() {
                ensure(us[i].is_disjoint(&us[j]), || format!("U_{i} meets U_{j}"))?;
            }
        }
    }
    Ok("10^2 extensions verified; 10^2 families separated through the extension".into())
}

fn first_countability() -> Verdict {
    let mut s = Sampler::new(10);
    for _ in 0..100 {
        let n = 1 + s.below(20) as usize;
        let cands: Vec<HedgehogSet> = (0..n)
            .map(|_| {
                let nb = s.apex_neighborhood(INF, TopologyKind::Quotient);
                nb.union(&s.open_set(INF, TopologyKind::Quotient)).unwrap()
            })
            .collect();
        let w = refute_countable_base(&cands).map_err(|e| e.to_string())?;
        ensure(classify_open(&w).quotient && w.contains_apex(), || {
            format!("{w} is not an apex neighborhood")
        })?;
        for c in &cands {
            ensure(!c.is_subset(&w).unwrap(), || format!("{c} fits inside {w}"))?;
        }
    }
    Ok("10^2 candidate lists refuted".into())
}

fn closure_laws() -> Verdict {
    let mut s = Sampler::new(11);
    for kind in TopologyKind::ALL {
        for _ in 0..1000 {
            let u = universes()[s.below(4) as usize];
            let (a, b) = (s.set(u), s.set(u));
            let ca = closure(&a, kind);
            ensure(a.is_subset(&ca).unwrap(), || {
                format!("not extensive at {a}")
            })?;
            ensure(closure(&ca, kind) == ca, || {
                format!("not idempotent at {a}")
            })?;
            let ab = a.union(&b).unwrap();
            ensure(ca.is_subset(&closure(&ab, kind)).unwrap(), || {
                format!("not monotone at {a}, {b}")
            })?;
        }
    }
    let mut d = Sampler::dyadic(12);
    for i in 0..100 {
        let a = d.set(universes()[i % 4]);
        let ca = closure(&a, TopologyKind::Metric);
        for q in grid_points(&a) {
            ensure(ca.member(&q) == grid_closure_member(&a, &q), || {
                format!("closure of {a} disagrees with the grid at {q}")
            })?;
        }
    }
    Ok("10^3 sets per topology; 10^2 metric closures match the grid".into())
}

fn subcover() -> Verdict {
    let mut s = Sampler::new(13);
    let mut longest = 0;
    for i in 0..100 {
        let u = universes()[i % 4];
        let stream = s.covering_stream(u);
        let len = stream.len();
        let sub = extract_finite_subcover(stream, len).map_err(|e| e.to_string())?;
        longest = longest.max(sub.sets.len());
        let union = sub
            .sets
            .iter()
            .fold(HedgehogSet::empty(u), |acc, x| acc.union(x).unwrap());
        ensure(union == HedgehogSet::full(u), || {
            "subcover does not cover".into()
        })?;
    }
    let gap = HedgehogSet::without_closed_tails(INF, [(1, rat(1, 2))]).unwrap();
    let stream = std::iter::repeat_n(gap, 50);
    ensure(
        extract_finite_subcover(stream, 50) == Err(Error::NoSubcoverWithinBound { bound: 50 }),
        || "non-covering stream was not rejected".into(),
    )?;
    Ok(format!(
        "10^2 streams, largest subcover {longest}; non-cover rejected"
    ))
}

fn report() -> Verdict {
    let r = build_report(&ReportOptions::default());
    let live: Vec<_> = r
        .cells
        .iter()
        .filter(|c| c.evidence == Evidence::ExecutableWitness)
        .collect();
    for c in &live {
        ensure(c.observed == Some(c.verdict), || {
            format!(
                "{} / {} / {}: {}",
                c.property, c.topology, c.regime, c.detail
            )
        })?;
    }
    ensure(r.ok(), || "report flags a contradiction".into())?;
    Ok(format!(
        "{} executable cells agree with the table",
        live.len()
    ))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("metric axioms", metric_axioms),
        ("order isomorphism", order_isomorphism),
        ("subbase classification", subbase_classification),
        ("ball grid oracle", ball_oracle),
        ("epsilon nets", epsilon_nets),
        ("real-line embedding", real_embedding),
        ("stone refinement", stone),
        ("kowalsky embedding", kowalsky),
        ("extension", extension),
        ("first-countability refutation", first_countability),
        ("closure", closure_laws),
        ("compact subcover", subcover),
        ("summary report", report),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
