//! Exact rational arithmetic.
//!
//! Every probability, odds and ratio in this crate is a [`Rational`]:
//! an arbitrary-precision fraction kept in canonical reduced form.
//! Floating point only ever appears as an optional decimal hint when
//! rendering reports.

use std::str::FromStr;

use num::bigint::BigInt;
use num::{BigUint, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num::rational::BigRational;

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` reduced; panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    assert!(den != 0, "zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn from_biguint(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// 3^exp as an unbounded integer.
pub fn pow3(exp: usize) -> BigUint {
    BigUint::from(3u32).pow(u32::try_from(exp).expect("exponent fits in u32"))
}

/// Reciprocal of 3^exp.
pub fn inv_pow3(exp: usize) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(pow3(exp)))
}

/// Decimal hint; exactness is lost, use only for display.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Canonical text form: `p/q`, or just `p` when the denominator is 1.
pub fn render(r: &Rational) -> String {
    r.to_string()
}

/// Parses `p`, `p/q` or `-p/q`; rejects zero denominators with a diagnostic.
pub fn parse(input: &str) -> Result<Rational> {
    let bad = |reason: &str| Error::ParseRational {
        input: input.to_string(),
        reason: reason.to_string(),
    };
    let s = input.trim();
    if s.is_empty() {
        return Err(bad("empty input"));
    }
    let (num, den) = match s.split_once('/') {
        None => (s, "1"),
        Some((n, d)) => (n, d),
    };
    let num = BigInt::from_str(num.trim()).map_err(|e| bad(&format!("bad numerator: {e}")))?;
    let den = BigInt::from_str(den.trim()).map_err(|e| bad(&format!("bad denominator: {e}")))?;
    if den.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !r.is_negative()
}

/// Serde adapter: rationals as `"p/q"` strings.
pub mod serde_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::render(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for optional rationals.
pub mod serde_str_opt {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::Rational;

    pub fn serialize<S: Serializer>(v: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(r) => s.serialize_some(&super::render(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| super::parse(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// Serde adapter: unbounded integers as decimal strings.
pub mod serde_biguint {
    use std::str::FromStr;

    use num::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::from_str(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        for s in ["1/4", "3", "-7/2", "0", "40/53"] {
            let r = parse(s).unwrap();
            assert_eq!(render(&r), s);
            assert_eq!(parse(&render(&r)).unwrap(), r);
        }
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(parse("2/8").unwrap(), ratio(1, 4));
        assert_eq!(render(&parse("6/3").unwrap()), "2");
    }

    #[test]
    fn parse_rejects_zero_denominator() {
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn pow3_small_values() {
        assert_eq!(pow3(0), BigUint::from(1u32));
        assert_eq!(pow3(4), BigUint::from(81u32));
        assert_eq!(inv_pow3(2), ratio(1, 9));
    }
}
