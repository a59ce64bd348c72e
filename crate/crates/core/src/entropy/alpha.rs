use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// `|α − 1|` below which the von Neumann formulas are used.
pub const NEAR_ONE: f64 = 1e-9;

/// Entropic parameter `α ∈ ℝ ∪ {+∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AlphaValue {
    Finite(f64),
    PositiveInfinity,
}

impl AlphaValue {
    pub fn finite(alpha: f64) -> Result<Self, Error> {
        if alpha.is_finite() {
            Ok(AlphaValue::Finite(alpha))
        } else if alpha == f64::INFINITY {
            Ok(AlphaValue::PositiveInfinity)
        } else {
            Err(Error::ParameterRange(format!("alpha {alpha} is not admitted")))
        }
    }

    pub fn is_negative(self) -> bool {
        matches!(self, AlphaValue::Finite(a) if a < 0.0)
    }

    pub fn is_nonnegative(self) -> bool {
        !self.is_negative()
    }

    pub fn is_near_one(self) -> bool {
        matches!(self, AlphaValue::Finite(a) if (a - 1.0).abs() < NEAR_ONE)
    }

    /// Values for which nonnegativity of the conditional entropy is established for
    /// separable states: `α ∈ {0, ∞} ∪ [1, 2]`.
    pub fn in_proven_range(self) -> bool {
        match self {
            AlphaValue::PositiveInfinity => true,
            AlphaValue::Finite(a) => a == 0.0 || (1.0 - NEAR_ONE..=2.0).contains(&a),
        }
    }

    /// Numeric value, `f64::INFINITY` for the infinite case.
    pub fn as_f64(self) -> f64 {
        match self {
            AlphaValue::Finite(a) => a,
            AlphaValue::PositiveInfinity => f64::INFINITY,
        }
    }
}

impl fmt::Display for AlphaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlphaValue::Finite(a) => write!(f, "{a}"),
            AlphaValue::PositiveInfinity => f.write_str("inf"),
        }
    }
}

impl FromStr for AlphaValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "inf" | "+inf" | "infinity" | "+infinity" | "∞" => Ok(AlphaValue::PositiveInfinity),
            _ => {
                let v: f64 = t
                    .parse()
                    .map_err(|_| Error::ParameterRange(format!("cannot parse alpha '{t}'")))?;
                AlphaValue::finite(v)
            }
        }
    }
}

/// Parses a comma-separated list such as `0,0.5,1,2,inf`.
pub fn parse_alpha_list(s: &str) -> Result<Vec<AlphaValue>, Error> {
    let list = s
        .split(',')
        .filter(|t| !t.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<_>, _>>()?;
    if list.is_empty() {
        return Err(Error::ParameterRange("empty alpha list".into()));
    }
    Ok(list)
}

impl Serialize for AlphaValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            AlphaValue::Finite(a) => s.serialize_f64(*a),
            AlphaValue::PositiveInfinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for AlphaValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => AlphaValue::finite(v).map_err(serde::de::Error::custom),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// `{0, 0.25, 0.5, 0.75, 1, 1.5, 2, 3, 5, 10, ∞}`.
pub fn default_grid() -> Vec<AlphaValue> {
    let mut grid: Vec<AlphaValue> = [0.0, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0]
        .into_iter()
        .map(AlphaValue::Finite)
        .collect();
    grid.push(AlphaValue::PositiveInfinity);
    grid
}

/// `{−0.5, −1, −2}`.
pub fn negative_grid() -> Vec<AlphaValue> {
    [-0.5, -1.0, -2.0].into_iter().map(AlphaValue::Finite).collect()
}

/// Default grid followed by the negative probes.
pub fn full_grid() -> Vec<AlphaValue> {
    let mut g = default_grid();
    g.extend(negative_grid());
    g
}
