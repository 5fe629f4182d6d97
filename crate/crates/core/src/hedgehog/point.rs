use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// The index set of the spines: finitely many, or the positive integers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpineUniverse {
    /// Spines `1..=count`.
    Finite(u64),
    /// Every positive integer is a spine.
    CountablyInfinite,
}

impl SpineUniverse {
    pub fn finite(count: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::PreconditionViolated(
                "a finite universe needs at least one spine".into(),
            ));
        }
        Ok(SpineUniverse::Finite(count))
    }

    pub fn contains_spine(&self, spine: u64) -> bool {
        match *self {
            SpineUniverse::Finite(count) => (1..=count).contains(&spine),
            SpineUniverse::CountablyInfinite => spine >= 1,
        }
    }

    pub fn check_spine(&self, spine: u64) -> Result<()> {
        if self.contains_spine(spine) {
            Ok(())
        } else {
            Err(Error::SpineOutOfUniverse {
                spine,
                universe: self.to_string(),
            })
        }
    }

    pub fn check_point(&self, p: &Point) -> Result<()> {
        match p.spine() {
            Some(spine) => self.check_spine(spine),
            None => Ok(()),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SpineUniverse::Finite(_))
    }
}

impl fmt::Display for SpineUniverse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpineUniverse::Finite(k) => write!(f, "{k}"),
            SpineUniverse::CountablyInfinite => f.write_str("inf"),
        }
    }
}

// Wire form: the string "inf" or a positive integer.
impl Serialize for SpineUniverse {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SpineUniverse::Finite(k) => s.serialize_u64(*k),
            SpineUniverse::CountablyInfinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for SpineUniverse {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Count(u64),
            Tag(String),
        }
        match Raw::deserialize(d)? {
            Raw::Count(k) => SpineUniverse::finite(k).map_err(serde::de::Error::custom),
            Raw::Tag(t) if t == "inf" => Ok(SpineUniverse::CountablyInfinite),
            Raw::Tag(t) => Err(serde::de::Error::custom(format!(
                "universe must be \"inf\" or a positive integer, got {t:?}"
            ))),
        }
    }
}

/// Spine index stored for every height-0 point. Real spines start at 1.
const APEX_SPINE: u64 = 0;

/// A point of the hedgehog: a height in `[0, 1]` on a spine.
///
/// All height-0 points are the same point (the apex); construction
/// normalizes their spine so that derived equality and hashing agree with
/// the identification.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    height: Rational,
    spine: u64,
}

impl Point {
    pub fn apex() -> Self {
        Point {
            height: Rational::zero(),
            spine: APEX_SPINE,
        }
    }

    pub fn new(height: Rational, spine: u64) -> Result<Self> {
        if height.is_negative() || height > Rational::one() {
            return Err(Error::HeightOutOfRange(rational::format(&height)));
        }
        if height.is_zero() {
            return Ok(Point::apex());
        }
        if spine == 0 {
            return Err(Error::SpineOutOfUniverse {
                spine,
                universe: "positive spine indices".into(),
            });
        }
        Ok(Point { height, spine })
    }

    pub fn height(&self) -> &Rational {
        &self.height
    }

    /// `None` for the apex.
    pub fn spine(&self) -> Option<u64> {
        (self.spine != APEX_SPINE).then_some(self.spine)
    }

    pub fn is_apex(&self) -> bool {
        self.spine == APEX_SPINE
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.spine() {
            None => f.write_str("0"),
            Some(i) => write!(f, "({}, {})", rational::Wire(&self.height), i),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PointWire {
    Apex {
        apex: bool,
    },
    OnSpine {
        #[serde(with = "crate::rational::serde_str")]
        height: Rational,
        spine: u64,
    },
}

impl Serialize for Point {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.spine() {
            None => PointWire::Apex { apex: true }.serialize(s),
            Some(spine) => PointWire::OnSpine {
                height: self.height.clone(),
                spine,
            }
            .serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for Point {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match PointWire::deserialize(d)? {
            PointWire::Apex { apex: true } => Ok(Point::apex()),
            PointWire::Apex { apex: false } => Err(serde::de::Error::custom(
                "\"apex\": false does not name a point",
            )),
            PointWire::OnSpine { height, spine } => {
                Point::new(height, spine).map_err(serde::de::Error::custom)
            }
        }
    }
}

/// The hedgehog metric: `|t - s|` on a common spine (or through the apex),
/// `t + s` across distinct spines.
pub fn distance(p: &Point, q: &Point) -> Rational {
    if p.spine == q.spine || p.is_apex() || q.is_apex() {
        (&p.height - &q.height).abs()
    } else {
        &p.height + &q.height
    }
}

/// Coordinate of `p` along spine `i`.
pub fn project_spine(p: &Point, i: u64) -> Rational {
    if p.spine() == Some(i) {
        p.height.clone()
    } else {
        Rational::zero()
    }
}

pub fn project_height(p: &Point) -> Rational {
    p.height.clone()
}
