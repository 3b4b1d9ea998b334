//! JSON plumbing. Integers travel as decimal strings so arbitrary precision
//! survives the round trip; bare JSON integers are accepted on input.
//! Output goes through `serde_json::Value`, whose map type keeps keys sorted,
//! so documents are byte-stable for identical inputs.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::de::{self, DeserializeOwned, Visitor};
use serde::{Deserializer, Serialize, Serializer};

use crate::error::Result;

/// Arbitrary-precision integer that deserializes from a decimal string or
/// a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecInt(pub BigInt);

impl<'de> serde::Deserialize<'de> for DecInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = DecInt;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or a decimal string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<DecInt, E> {
                Ok(DecInt(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<DecInt, E> {
                Ok(DecInt(v.into()))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<DecInt, E> {
                let t = v.trim();
                // BigInt::from_str also accepts "+5"; keep the grammar to -?[0-9]+
                let digits = t.strip_prefix('-').unwrap_or(t);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(E::custom(format!("not a decimal integer: {v:?}")));
                }
                BigInt::from_str(t).map(DecInt).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

impl Serialize for DecInt {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

/// Serde adapters for machine integers carried as decimal strings.
pub mod dec {
    use super::*;

    pub fn serialize<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> std::result::Result<T, D::Error>
    where
        T: TryFrom<BigInt>,
        D: Deserializer<'de>,
    {
        let DecInt(b) = serde::Deserialize::deserialize(d)?;
        let text = b.to_string();
        T::try_from(b).map_err(|_| de::Error::custom(format!("integer out of range: {text}")))
    }
}

/// Same as [`dec`] for fixed-size pairs.
pub mod dec_pair {
    use super::*;

    pub fn serialize<T: fmt::Display, S: Serializer>(v: &(T, T), s: S) -> std::result::Result<S::Ok, S::Error> {
        [v.0.to_string(), v.1.to_string()].serialize(s)
    }

    pub fn deserialize<'de, T, D>(d: D) -> std::result::Result<(T, T), D::Error>
    where
        T: TryFrom<BigInt>,
        D: Deserializer<'de>,
    {
        let [a, b]: [DecInt; 2] = serde::Deserialize::deserialize(d)?;
        let conv = |x: BigInt| {
            let text = x.to_string();
            T::try_from(x).map_err(|_| de::Error::custom(format!("integer out of range: {text}")))
        };
        Ok((conv(a.0)?, conv(b.0)?))
    }
}

/// Serde adapter for a `BigInt` field.
pub mod dec_big {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let DecInt(b) = serde::Deserialize::deserialize(d)?;
        Ok(b)
    }
}

/// Canonical (sorted-key, compact) rendering of any serializable value.
pub fn to_canonical_string<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string(&v)?)
}

/// Pretty variant of [`to_canonical_string`]; same key order.
pub fn to_canonical_pretty<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&v)?)
}

pub fn from_str<T: DeserializeOwned>(s: &str) -> Result<T> {
    Ok(serde_json::from_str(s)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde::Deserialize;

    #[derive(Debug, Serialize, Deserialize, PartialEq)]
    struct Probe {
        #[serde(with = "dec")]
        n: u64,
        #[serde(with = "dec_pair")]
        d: (u64, u64),
        #[serde(with = "dec_big")]
        big: BigInt,
    }

    #[test]
    fn decimal_strings_round_trip() {
        let p = Probe { n: 7, d: (2, 8), big: BigInt::from(-123456789012345678i64) * 1000 };
        let s = to_canonical_string(&p).unwrap();
        assert_eq!(s, r#"{"big":"-123456789012345678000","d":["2","8"],"n":"7"}"#);
        assert_eq!(serde_json::from_str::<Probe>(&s).unwrap(), p);
    }

    #[test]
    fn bare_integers_accepted() {
        let p: Probe = serde_json::from_str(r#"{"n":3,"d":[1,"9"],"big":-4}"#).unwrap();
        assert_eq!(p, Probe { n: 3, d: (1, 9), big: BigInt::from(-4) });
    }

    #[test]
    fn junk_rejected() {
        for bad in [
            r#"{"n":"3x","d":[1,9],"big":0}"#,
            r#"{"n":"+3","d":[1,9],"big":0}"#,
            r#"{"n":"-1","d":[1,9],"big":0}"#,
            r#"{"n":1.5,"d":[1,9],"big":0}"#,
            r#"{"n":"","d":[1,9],"big":0}"#,
        ] {
            assert!(serde_json::from_str::<Probe>(bad).is_err(), "{bad}");
        }
    }
}
