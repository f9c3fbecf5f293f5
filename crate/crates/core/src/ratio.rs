//! Exact rational helpers: the `"num/den"` text form and its serde adapter.

use std::fmt::Display;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};

/// Renders `r` as `"num/den"`, keeping the denominator even when it is 1.
pub fn format<T: Display + Clone + Integer>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the output of [`format`]. A bare integer is accepted as `n/1`.
pub fn parse<T: FromStr + Clone + Integer>(s: &str) -> Option<Ratio<T>> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse().ok()?, d.trim().parse().ok()?),
        None => (s.trim().parse().ok()?, T::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(Ratio::new(n, d))
}

pub fn to_big(r: &Ratio<i64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// `serde(with = "crate::ratio::text")` for any `Ratio<T>`.
pub mod text {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<T, S>(r: &Ratio<T>, s: S) -> Result<S::Ok, S::Error>
    where
        T: Display + Clone + Integer,
        S: Serializer,
    {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Ratio<T>, D::Error>
    where
        T: FromStr + Clone + Integer,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| de::Error::custom(format!("bad rational `{s}`")))
    }
}
