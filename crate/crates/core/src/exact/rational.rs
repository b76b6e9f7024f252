//! Exact rational scalars.
//!
//! [`Rational`] is a gcd-reduced fraction of arbitrary-precision integers with
//! a positive denominator, so structural equality is value equality. The text
//! form is `"a"` or `"a/b"` with `b > 1` and `gcd(|a|, b) = 1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Canonical decimal text, `"-1"`, `"3/2"`.
pub fn format(value: &Rational) -> String {
    // `Ratio` already prints the bare numerator when the denominator is one.
    value.to_string()
}

/// Parses `"a"` or `"a/b"`. The denominator must be a positive integer; the
/// result is reduced.
pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer = parse_int(num, true).ok_or_else(|| bad(text))?;
    let denom = match den {
        Some(d) => parse_int(d, false).ok_or_else(|| bad(text))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::input(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::new(numer, denom))
}

fn parse_int(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = if allow_sign {
        s.strip_prefix('-').unwrap_or(s)
    } else {
        s
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn bad(text: &str) -> Error {
    Error::input(format!("not a rational number: {text:?}"))
}

/// Converts to the nearest `f64` (used only by the floating-point ring).
pub fn to_f64(value: &Rational) -> f64 {
    let n = value.numer();
    let d = value.denom();
    match (i64::try_from(n), i64::try_from(d)) {
        (Ok(n), Ok(d)) => n as f64 / d as f64,
        _ => {
            let n: f64 = n.to_string().parse().unwrap_or(f64::NAN);
            let d: f64 = d.to_string().parse().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Returns the value as an `i64` when it is an integer in range.
pub fn to_i64(value: &Rational) -> Option<i64> {
    if value.is_integer() {
        i64::try_from(value.numer()).ok()
    } else {
        None
    }
}

pub fn is_negative_one(value: &Rational) -> bool {
    value.is_negative() && value.is_integer() && value.numer().abs().is_one()
}

pub mod serde_string {
    //! `#[serde(with = ...)]` helpers for the string form.
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse(&text).map_err(serde::de::Error::custom)
    }
}
