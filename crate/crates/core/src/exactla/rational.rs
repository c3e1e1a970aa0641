//! Exact rationals and their text form.
//!
//! `Rational` is `num_rational::BigRational`: always reduced, denominator
//! positive, zero stored as `0/1`. The text form is `p/q` or a bare integer
//! `p`; decimals are only accepted through [`parse_decimal`], which converts
//! them exactly (`0.001` becomes `1/1000`).

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// `num / den` as an exact rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Parses `p/q` or `p`. Decimal points are rejected.
pub fn parse_exact(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::invalid("empty rational"));
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::invalid(format!("not an exact rational: {s:?}")))?;
    let den: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::invalid(format!("not an exact rational: {s:?}")))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::invalid(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// Like [`parse_exact`] but also accepts finite decimals such as `0.3493`
/// or `1e-3`, converted without rounding.
pub fn parse_decimal(s: &str) -> Result<Rational> {
    let t = s.trim();
    if t.contains('/') || !(t.contains('.') || t.contains(['e', 'E'])) {
        return parse_exact(t);
    }
    let bad = || Error::invalid(format!("not a decimal: {s:?}"));
    let (mantissa, exp) = match t.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole
        .chars()
        .chain(frac.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: BigInt = format!("{whole}{frac}0").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32 - 1;
    let ten = BigInt::from(10);
    let mut value = Rational::from_integer(digits);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if neg { -value } else { value })
}

/// Canonical text form: `p/q`, or `p` when the denominator is one.
pub fn format(r: &Rational) -> String {
    r.to_string()
}

/// Lossy conversion for reporting only.
pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Splits a comma-separated list of exact rationals.
pub fn parse_list(s: &str, allow_decimal: bool) -> Result<Vec<Rational>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|p| {
            if allow_decimal {
                parse_decimal(p)
            } else {
                parse_exact(p)
            }
        })
        .collect()
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_exact(&s).map_err(serde::de::Error::custom)
    }
}

pub mod serde_rational_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_exact(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

pub mod serde_rational_opt {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        r: &Option<Rational>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match r {
            Some(r) => s.serialize_some(&format(r)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Rational>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_exact(&s).map_err(serde::de::Error::custom))
            .transpose()
    }
}
