use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use hedgehog::embeddings::{
    basis_check, check_refinement, check_separation, default_resolution, embed_real, fan_map,
    invert_real, kowalsky_embed, sigma_discrete_basis, stone_refine, PointPair,
};
use hedgehog::extension::{hedgehog_extend, verify_extension, HedgehogMap};
use hedgehog::hedgehog::{ball, BallKind};
use hedgehog::metricspace::{bound_metric, FiniteMetricSpace, PointSet};
use hedgehog::rational::{self, Rational};
use hedgehog::report::{build_report, ReportOptions};
use hedgehog::sets::{classify_open, closure, extract_finite_subcover};
use hedgehog::{HedgehogSet, Point, SpineUniverse, TopologyKind};

#[derive(Parser)]
#[command(
    name = "hedgehog",
    version,
    about = "Exact computations on hedgehog spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Whether a set is open in the quotient, metric and compact topologies.
    Classify { input: PathBuf },
    /// Closure of a set.
    Closure {
        input: PathBuf,
        #[arg(long, default_value = "metric")]
        topology: TopologyKind,
    },
    /// A metric ball: {"center", "radius", "kind", "universe"}.
    Ball { input: PathBuf },
    /// The pair of hedgehog points coding a rational number.
    EmbedReal {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// The number coded by a pair of points, if any.
    InvertReal { input: PathBuf },
    /// A point of the plane fan: height along the ray of slope `label`.
    Fan {
        #[arg(long)]
        height: String,
        #[arg(long, allow_hyphen_values = true)]
        label: String,
    },
    /// Sigma-discrete refinement of a cover: {"space", "cover"}.
    Stone {
        input: PathBuf,
        #[arg(long)]
        max_level: Option<u32>,
    },
    /// Sigma-discrete basis of a finite metric space.
    Basis {
        input: PathBuf,
        #[arg(long)]
        resolution: Option<u32>,
    },
    /// Embedding into a countable power of the hedgehog.
    Kowalsky {
        input: PathBuf,
        #[arg(long)]
        resolution: Option<u32>,
        /// Replace the metric by min(d, 1) first.
        #[arg(long)]
        bound: bool,
    },
    /// Extends a hedgehog-valued map: {"space", "f", "universe"}.
    Extend { input: PathBuf },
    /// Finite subcover of a stream of compact-open sets.
    Subcover {
        input: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        bound: usize,
    },
    /// The table of topological properties, checked live where possible.
    Report {
        #[arg(long)]
        json: bool,
        /// Spine counts tried for the finite column.
        #[arg(long, value_delimiter = ',')]
        kappa: Vec<u64>,
        /// Plant a wrong table entry to test the checker.
        #[arg(long)]
        inject_fault: bool,
    },
}

enum Failure {
    /// Unreadable or malformed input.
    Malformed {
        message: String,
        line: Option<usize>,
        column: Option<usize>,
    },
    Domain(hedgehog::Error),
    /// Output produced, but a property the library guarantees did not hold.
    Broken {
        output: Value,
        what: String,
    },
}

impl From<hedgehog::Error> for Failure {
    fn from(e: hedgehog::Error) -> Self {
        Failure::Domain(e)
    }
}

fn malformed(message: impl Into<String>) -> Failure {
    Failure::Malformed {
        message: message.into(),
        line: None,
        column: None,
    }
}

type Outcome = Result<Value, Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let read = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| malformed(format!("{}: {e}", path.display())))?;
    Ok(text)
}

fn parse_json<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Malformed {
        message: format!("{}: {e}", path.display()),
        line: Some(e.line()),
        column: Some(e.column()),
    })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    parse_json(path, &read_text(path)?)
}

/// Reads either `{"<key>": T}` or a bare `T`.
fn read_wrapped<T: DeserializeOwned>(path: &Path, key: &str) -> Result<T, Failure> {
    let text = read_text(path)?;
    let raw: Value = parse_json(path, &text)?;
    if raw.get(key).is_some() {
        let mut doc: BTreeMap<String, T> = parse_json(path, &text)?;
        if doc.len() != 1 {
            return Err(malformed(format!(
                "{}: unexpected keys beside {key:?}",
                path.display()
            )));
        }
        Ok(doc.remove(key).expect("present"))
    } else {
        parse_json(path, &text)
    }
}

fn parse_rational(flag: &str, s: &str) -> Result<Rational, Failure> {
    rational::parse(s).map_err(|e| malformed(format!("--{flag}: {e}")))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("library types serialize")
}

fn q(r: &Rational) -> Value {
    Value::String(rational::format(r))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BallInput {
    center: Point,
    radius: String,
    #[serde(default = "open_kind")]
    kind: BallKind,
    #[serde(default = "infinite")]
    universe: SpineUniverse,
}

fn open_kind() -> BallKind {
    BallKind::Open
}

fn infinite() -> SpineUniverse {
    SpineUniverse::CountablyInfinite
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CoverInput {
    space: FiniteMetricSpace,
    #[serde(alias = "sets")]
    cover: Vec<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtendInput {
    space: FiniteMetricSpace,
    f: BTreeMap<String, Point>,
    #[serde(default = "infinite")]
    universe: SpineUniverse,
}

fn names(space: &FiniteMetricSpace, set: &PointSet) -> Value {
    to_value(&space.names(set))
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Classify { input } => {
            let set: HedgehogSet = read_json(&input)?;
            Ok(to_value(&classify_open(&set)))
        }
        Command::Closure { input, topology } => {
            let set: HedgehogSet = read_json(&input)?;
            Ok(to_value(&closure(&set, topology)))
        }
        Command::Ball { input } => {
            let b: BallInput = read_json(&input)?;
            let r = parse_rational("radius", &b.radius)?;
            Ok(to_value(&ball(&b.center, &r, b.kind, b.universe)?))
        }
        Command::EmbedReal { x } => {
            let x = parse_rational("x", &x)?;
            Ok(to_value(&embed_real(&x)?))
        }
        Command::InvertReal { input } => {
            let pair: PointPair = read_json(&input)?;
            Ok(json!({ "x": q(&invert_real(&pair)?) }))
        }
        Command::Fan { height, label } => {
            let h = parse_rational("height", &height)?;
            if h < Rational::from_integer(0.into()) || h > Rational::from_integer(1.into()) {
                return Err(hedgehog::Error::HeightOutOfRange(height).into());
            }
            let l = parse_rational("label", &label)?;
            let (x, y) = fan_map(&h, &l);
            Ok(json!({ "x": q(&x), "y": q(&y) }))
        }
        Command::Stone { input, max_level } => {
            let c: CoverInput = read_json(&input)?;
            let space = c.space;
            let cover = c
                .cover
                .iter()
                .map(|s| space.indices(s))
                .collect::<hedgehog::Result<Vec<_>>>()?;
            let fam = stone_refine(&space, &cover, max_level)?;
            let check = check_refinement(&space, &cover, &fam);
            let levels: Vec<Value> = fam
                .levels
                .iter()
                .map(|l| {
                    let members: Vec<Value> = l
                        .members
                        .iter()
                        .map(|m| {
                            json!({
                                "cover_index": m.cover_index,
                                "set": names(&space, &m.set),
                                "centers": m.centers.iter().map(|&c| space.label(c)).collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    json!({ "level": l.level, "radius": q(&l.radius()), "members": members })
                })
                .collect();
            let out = json!({ "levels": levels, "check": to_value(&check) });
            if check.passed() {
                Ok(out)
            } else {
                Err(Failure::Broken {
                    output: out,
                    what: "refinement check failed".into(),
                })
            }
        }
        Command::Basis { input, resolution } => {
            let space = read_wrapped::<FiniteMetricSpace>(&input, "space")?;
            let m = resolution.unwrap_or_else(|| default_resolution(&space));
            let fams = sigma_discrete_basis(&space, Some(m))?;
            let failures = basis_check(&space, &fams, m);
            let families: Vec<Value> = fams
                .iter()
                .map(|f| {
                    json!({
                        "gap": q(&f.gap),
                        "source": f.source,
                        "members": f.members.iter().map(|s| names(&space, s)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            Ok(json!({
                "resolution": m,
                "families": families,
                "passed": failures.is_empty(),
                "failures": to_value(&failures),
            }))
        }
        Command::Kowalsky {
            input,
            resolution,
            bound,
        } => {
            let mut space = read_wrapped::<FiniteMetricSpace>(&input, "space")?;
            if bound {
                space = bound_metric(&space);
            }
            let fams = sigma_discrete_basis(&space, resolution)?;
            let emb = kowalsky_embed(&space, &fams)?;
            let rep = check_separation(&emb, &space);
            let map: BTreeMap<&str, &Vec<Point>> = (0..space.len())
                .map(|x| (space.label(x), &emb.map[x]))
                .collect();
            let out = json!({
                "spines": emb.spines,
                "map": to_value(&map),
                "separation": to_value(&rep),
            });
            if rep.separates_points && rep.separates_points_and_closed_sets {
                Ok(out)
            } else {
                Err(Failure::Broken {
                    output: out,
                    what: "embedding does not separate".into(),
                })
            }
        }
        Command::Extend { input } => {
            let e: ExtendInput = read_json(&input)?;
            let space = e.space;
            let mut f = HedgehogMap::new();
            for (label, p) in &e.f {
                f.insert(space.index(label)?, p.clone());
            }
            let ext = hedgehog_extend(&space, &f, e.universe)?;
            let rep = verify_extension(&space, &ext, &f);
            let map: BTreeMap<&str, &Point> =
                ext.map.iter().map(|(x, p)| (space.label(*x), p)).collect();
            let sets = |m: &BTreeMap<u64, PointSet>| -> BTreeMap<u64, Value> {
                m.iter().map(|(k, s)| (*k, names(&space, s))).collect()
            };
            let out = json!({
                "map": to_value(&map),
                "g": ext.g.to_labeled(&space),
                "h": ext.h.to_labeled(&space),
                "separators": sets(&ext.separators),
                "preimages": sets(&ext.preimages),
                "verification": to_value(&rep),
            });
            if rep.passed() {
                Ok(out)
            } else {
                Err(Failure::Broken {
                    output: out,
                    what: "extension failed verification".into(),
                })
            }
        }
        Command::Subcover { input, bound } => {
            let sets: Vec<HedgehogSet> = read_wrapped(&input, "sets")?;
            let sub = extract_finite_subcover(sets, bound)?;
            Ok(json!({ "indices": sub.indices, "sets": to_value(&sub.sets) }))
        }
        Command::Report {
            json: as_json,
            kappa,
            inject_fault,
        } => {
            let mut opts = ReportOptions {
                inject_fault,
                ..ReportOptions::default()
            };
            if !kappa.is_empty() {
                if kappa.contains(&0) {
                    return Err(malformed("--kappa: spine counts must be positive"));
                }
                opts.finite_sizes = kappa;
            }
            let report = build_report(&opts);
            let out = if as_json {
                to_value(&report.cells)
            } else {
                Value::String(report.render())
            };
            if report.ok() {
                Ok(out)
            } else {
                let bad: Vec<String> = report
                    .contradictions()
                    .map(|c| format!("{} / {} / {}", c.property, c.topology, c.regime))
                    .collect();
                Err(Failure::Broken {
                    output: out,
                    what: format!("table contradicted at {}", bad.join("; ")),
                })
            }
        }
    }
}

fn emit(v: &Value) {
    match v {
        Value::String(s) => print!("{s}"),
        v => println!(
            "{}",
            serde_json::to_string_pretty(v).expect("json values print")
        ),
    }
}

fn error_kind(e: &hedgehog::Error) -> String {
    let debug = format!("{e:?}");
    debug
        .split(|c: char| !c.is_alphanumeric())
        .next()
        .unwrap_or_default()
        .to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = std::panic::catch_unwind(|| run(cli.command));
    match result {
        Ok(Ok(v)) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Ok(Err(Failure::Malformed {
            message,
            line,
            column,
        })) => {
            eprintln!("malformed input: {message}");
            emit(
                &json!({ "error": { "kind": "MalformedInput", "message": message, "line": line, "column": column } }),
            );
            ExitCode::from(1)
        }
        Ok(Err(Failure::Domain(e))) => {
            eprintln!("error: {e}");
            emit(&json!({ "error": { "kind": error_kind(&e), "message": e.to_string() } }));
            ExitCode::from(2)
        }
        Ok(Err(Failure::Broken { output, what })) => {
            emit(&output);
            eprintln!("invariant breach: {what}");
            ExitCode::from(3)
        }
        Err(_) => {
            eprintln!("invariant breach: internal panic");
            ExitCode::from(3)
        }
    }
}
