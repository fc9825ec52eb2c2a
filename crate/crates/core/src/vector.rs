//! Exact half-integer vectors and the rational string format used in reports.

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = Ratio<i64>;

/// A vector in `(1/2)Z^n`, stored as twice its coordinates.
///
/// Coweights, weights, roots and coroots all share this carrier; the pairing
/// between them is the standard dot product.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfIntVector {
    doubled: Vec<i64>,
}

impl HalfIntVector {
    pub fn from_doubled(doubled: Vec<i64>) -> Self {
        Self { doubled }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self {
            doubled: coords.iter().map(|c| 2 * c).collect(),
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self { doubled: vec![0; dim] }
    }

    /// `e_i` (zero-based `i`).
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.doubled[i] = 2;
        v
    }

    /// The vector with every coordinate equal to `doubled / 2`.
    pub fn constant(dim: usize, doubled: i64) -> Self {
        Self {
            doubled: vec![doubled; dim],
        }
    }

    pub fn from_rationals(coords: &[Rational]) -> Result<Self> {
        coords
            .iter()
            .map(|c| {
                let twice = *c * 2;
                if twice.is_integer() {
                    Ok(twice.to_integer())
                } else {
                    Err(Error::Parse(format!(
                        "coordinate {} is not a half-integer",
                        format_rational(c)
                    )))
                }
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::from_doubled)
    }

    pub fn dim(&self) -> usize {
        self.doubled.len()
    }

    pub fn doubled(&self) -> &[i64] {
        &self.doubled
    }

    pub fn coord(&self, i: usize) -> Rational {
        Ratio::new(self.doubled[i], 2)
    }

    pub fn coords(&self) -> Vec<Rational> {
        (0..self.dim()).map(|i| self.coord(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.doubled.iter().all(|&d| d == 0)
    }

    pub fn is_integral(&self) -> bool {
        self.doubled.iter().all(|d| d % 2 == 0)
    }

    /// Every coordinate is a proper half-integer.
    pub fn is_all_half(&self) -> bool {
        self.doubled.iter().all(|d| d % 2 != 0)
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            })
        }
    }

    /// Exact dot product.
    pub fn pairing(&self, other: &Self) -> Result<Rational> {
        other.check_dim(self.dim())?;
        Ok(Ratio::new(self.dot_doubled(other), 4))
    }

    /// Dot product of the doubled representations, i.e. four times the pairing.
    pub(crate) fn dot_doubled(&self, other: &Self) -> i64 {
        self.doubled.iter().zip(&other.doubled).map(|(a, b)| a * b).sum()
    }

    /// Pairing that the caller knows must be integral.
    pub fn integral_pairing(&self, other: &Self) -> Result<i64> {
        let p = self.pairing(other)?;
        if p.is_integer() {
            Ok(p.to_integer())
        } else {
            Err(Error::NonIntegral {
                what: format!("<{self}, {other}>"),
                value: format_rational(&p),
            })
        }
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            doubled: self.doubled.iter().map(|d| d * k).collect(),
        }
    }

    /// Sum of absolute values of coordinates, doubled.
    pub fn l1_doubled(&self) -> i64 {
        self.doubled.iter().map(|d| d.abs()).sum()
    }

    pub fn max_abs_doubled(&self) -> i64 {
        self.doubled.iter().map(|d| d.abs()).max().unwrap_or(0)
    }

    /// Coordinates as `"p"` or `"p/2"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.doubled.iter().map(|&d| format_half(d)).collect()
    }

    pub fn parse_list(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(Self::zero(0));
        }
        s.split(',')
            .map(|c| parse_half(c.trim()))
            .collect::<Result<Vec<_>>>()
            .map(Self::from_doubled)
    }
}

impl fmt::Display for HalfIntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(","))
    }
}

impl fmt::Debug for HalfIntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfIntVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_list(s)
    }
}

impl Add for &HalfIntVector {
    type Output = HalfIntVector;

    fn add(self, rhs: &HalfIntVector) -> HalfIntVector {
        assert_eq!(self.dim(), rhs.dim(), "vector length mismatch");
        HalfIntVector {
            doubled: self.doubled.iter().zip(&rhs.doubled).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &HalfIntVector {
    type Output = HalfIntVector;

    fn sub(self, rhs: &HalfIntVector) -> HalfIntVector {
        assert_eq!(self.dim(), rhs.dim(), "vector length mismatch");
        HalfIntVector {
            doubled: self.doubled.iter().zip(&rhs.doubled).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &HalfIntVector {
    type Output = HalfIntVector;

    fn neg(self) -> HalfIntVector {
        self.scale(-1)
    }
}

impl Serialize for HalfIntVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

/// Accepts `["1/2", 3]` style lists or a single comma-separated string.
impl<'de> Deserialize<'de> for HalfIntVector {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Coord {
            Int(i64),
            Text(String),
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            List(Vec<Coord>),
            Text(String),
        }
        let parsed = match Raw::deserialize(deserializer)? {
            Raw::Text(s) => HalfIntVector::parse_list(&s),
            Raw::List(coords) => coords
                .iter()
                .map(|c| match c {
                    Coord::Int(i) => i
                        .checked_mul(2)
                        .ok_or_else(|| Error::Parse(format!("coordinate {i} out of range"))),
                    Coord::Text(s) => parse_half(s),
                })
                .collect::<Result<Vec<_>>>()
                .map(HalfIntVector::from_doubled),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

fn format_half(doubled: i64) -> String {
    if doubled % 2 == 0 {
        (doubled / 2).to_string()
    } else {
        format!("{doubled}/2")
    }
}

/// Parses `"p"`, `"p/q"` (value must be a half-integer) into a doubled integer.
pub fn parse_half(s: &str) -> Result<i64> {
    let r = parse_rational(s)?;
    let twice = r * 2;
    if twice.is_integer() {
        Ok(twice.to_integer())
    } else {
        Err(Error::Parse(format!("{s:?} is not an integer or half-integer")))
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("{s:?} is not a rational of the form p or p/q"));
    match s.split_once('/') {
        None => s.parse::<i64>().map(Rational::from_integer).map_err(|_| bad()),
        Some((n, d)) => {
            let n = n.trim().parse::<i64>().map_err(|_| bad())?;
            let d = d.trim().parse::<i64>().map_err(|_| bad())?;
            if d == 0 {
                return Err(bad());
            }
            Ok(Ratio::new(n, d))
        }
    }
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.to_integer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub(crate) fn rational_is_zero_mod(r: &Rational, p: u64) -> bool {
    if p == 0 {
        return r.is_zero();
    }
    r.numer().abs() % p as i64 == 0
}
