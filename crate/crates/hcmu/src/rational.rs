//! Exact rational arithmetic for the combinatorial side of the crate.
//!
//! Cone angles are kept in units of 2*pi as `BigRational` so that angle sums,
//! admissibility arithmetic, and the planner's ratio constraints can be
//! asserted with zero tolerance. Floating point only enters when a profile
//! is actually solved.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::str::FromStr;

pub type Rat = BigRational;

/// n/d as an exact rational. Panics on d == 0; use for literals in code.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Integer value of r if it has one.
pub fn to_integer(r: &Rat) -> Option<BigInt> {
    is_integer(r).then(|| r.numer().clone())
}

pub fn to_f64(r: &Rat) -> f64 {
    r.to_f64()
        .expect("finite rational values convert to f64")
}

/// "p/q" when the denominator is not 1, otherwise just "p".
pub fn format_rat(r: &Rat) -> String {
    if is_integer(r) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("cannot parse {0:?} as a rational (accepted: \"p/q\", integers, plain decimals)")]
pub struct ParseRatError(pub String);

/// Parses "p/q", integer, or plain decimal strings into exact rationals.
/// Decimals parse exactly: "0.125" becomes 1/8, "1.3" becomes 13/10.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let t = s.trim();
    let err = || ParseRatError(s.to_string());
    if let Some((num, den)) = t.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.trim_start().starts_with('-');
        let w = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| err())?
        };
        let f = BigInt::from_str(frac).map_err(|_| err())?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let numer = w.abs() * &scale + f;
        let signed = if negative { -numer } else { numer };
        return Ok(Rat::new(signed, scale));
    }
    BigInt::from_str(t).map(Rat::from_integer).map_err(|_| err())
}

/// Exact rational representation of an f64 (its binary expansion).
pub fn rat_from_f64(v: f64) -> Option<Rat> {
    Rat::from_float(v)
}

/// Curvature extremes scaled by area/(4*pi): (2a - b, 2b - a).
///
/// The scaling strips the positive factor 4*pi/area, so every sign and
/// ordering statement about the true extremes can be checked exactly here.
pub fn scaled_extremes(a: &Rat, b: &Rat) -> (Rat, Rat) {
    let two = rat_int(2);
    (&two * a - b, &two * b - a)
}

/// Serde adapter serializing a `Rat` as its "p/q" string.
/// Use with `#[serde(with = "crate::rational::rat_string")]`.
pub mod rat_string {
    use super::{format_rat, parse_rat, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rat(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let text = String::deserialize(d)?;
        parse_rat(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<Rat>` as a list of "p/q" strings.
pub mod rat_vec_string {
    use super::{format_rat, parse_rat, Rat};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|r| format_rat(r)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts
            .iter()
            .map(|t| parse_rat(t).map_err(serde::de::Error::custom))
            .collect()
    }
}
