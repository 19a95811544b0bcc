//! Exact rational scalars and the `"p/q"` text form used on the wire.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar.
pub type Q = BigRational;

/// A point (or direction) with exact rational coordinates.
pub type Point = Vec<Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(xs: &[i64]) -> Vec<Q> {
    xs.iter().map(|&x| q(x)).collect()
}

/// Canonical text form: `"p/q"` in lowest terms with `q > 0`; integers as `"p"`.
pub fn format_q(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parse `"p"`, `"p/q"` or `"-p/q"`. Decimal and exponent notation is rejected.
pub fn parse_q(s: &str) -> Result<Q> {
    let t = s.trim();
    let bad = || Error::NonRational(s.to_string());
    let parse_int = |part: &str| -> Result<BigInt> {
        let digits = part.strip_prefix(['-', '+']).unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        part.parse::<BigInt>().map_err(|_| bad())
    };
    match t.split_once('/') {
        None => Ok(Q::from_integer(parse_int(t)?)),
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(parse_int(n)?, d))
        }
    }
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = Q::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += x * y;
        }
    }
    acc
}

pub fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[Q], c: &Q) -> Vec<Q> {
    a.iter().map(|x| x * c).collect()
}

pub fn neg(a: &[Q]) -> Vec<Q> {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn sign(x: &Q) -> i8 {
    match x.cmp(&Q::zero()) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Positive rescaling of a nonzero vector to a primitive integer vector.
pub fn primitive(a: &[Q]) -> Vec<Q> {
    let mut l = BigInt::one();
    for x in a {
        l = l.lcm(x.denom());
    }
    let ints: Vec<BigInt> = a.iter().map(|x| x.numer() * (&l / x.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return a.to_vec();
    }
    ints.into_iter().map(|x| Q::from_integer(x / &g)).collect()
}

/// Integer vector of a primitive rational vector (panics on non-integers in debug).
pub fn to_bigints(a: &[Q]) -> Vec<BigInt> {
    a.iter()
        .map(|x| {
            debug_assert!(x.denom().is_one());
            x.numer().clone()
        })
        .collect()
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

pub fn to_f64(x: &Q) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

pub mod serde_q {
    //! Serde adapters for rationals as `"p/q"` strings.
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        parse_q(&s).map_err(de::Error::custom)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(xs.len()))?;
            for x in xs {
                seq.serialize_element(&format_q(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Q>, D::Error> {
            let v = Vec::<String>::deserialize(d)?;
            v.iter()
                .map(|s| parse_q(s).map_err(de::Error::custom))
                .collect()
        }
    }

    pub mod mat {
        use super::*;

        pub fn serialize<S: Serializer>(
            rows: &[Vec<Q>],
            s: S,
        ) -> std::result::Result<S::Ok, S::Error> {
            let v: Vec<Vec<String>> = rows
                .iter()
                .map(|r| r.iter().map(format_q).collect())
                .collect();
            serde::Serialize::serialize(&v, s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> std::result::Result<Vec<Vec<Q>>, D::Error> {
            let v = Vec::<Vec<String>>::deserialize(d)?;
            v.iter()
                .map(|r| {
                    r.iter()
                        .map(|s| parse_q(s).map_err(de::Error::custom))
                        .collect()
                })
                .collect()
        }
    }
}
