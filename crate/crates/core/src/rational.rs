//! Exact rationals backed by `num-rational`, plus the `"p/q"` string form used
//! in every JSON document.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{LabError, Result};

pub type Rational = num_rational::BigRational;

/// `p/q` as a reduced rational. Panics when `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub fn in_unit_interval(x: &Rational) -> bool {
    !x.is_negative() && *x <= Rational::one()
}

pub fn check_unit(x: &Rational, context: &str) -> Result<()> {
    if in_unit_interval(x) {
        Ok(())
    } else {
        Err(LabError::OutOfUnitInterval {
            value: x.clone(),
            context: context.to_string(),
        })
    }
}

/// Parses `"p/q"` or `"p"`. Denominators must be positive; the result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let err = |message: &str| LabError::Parse {
        path: String::new(),
        message: format!("{message}: {s:?}"),
    };
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| err("bad numerator"))?;
    let den = BigInt::from_str(den).map_err(|_| err("bad denominator"))?;
    if !den.is_positive() {
        return Err(err("denominator must be positive"));
    }
    Ok(Rational::new(num, den))
}

/// Canonical `"p/q"` rendering (`"p"` when the denominator is 1).
pub fn fmt_rational(x: &Rational) -> String {
    x.to_string()
}

/// Parses a comma-separated list such as `"0,1/2,1"`.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(parse_rational)
        .collect()
}

/// Largest integer `n` with `n <= x`.
pub fn floor_int(x: &Rational) -> BigInt {
    x.floor().to_integer()
}

/// `serde(with = ...)` adaptor for a single rational as a `"p/q"` string.
pub mod serde_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{fmt_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rational(&raw).map_err(serde::de::Error::custom)
    }
}

/// `serde(with = ...)` adaptor for a list of `"p/q"` strings.
pub mod serde_str_vec {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{fmt_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(xs.iter().map(fmt_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}
