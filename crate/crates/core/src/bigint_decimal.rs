//! Serde adapter writing big integers as full decimal strings.

use num_bigint::BigUint;
use serde::{de, Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(value: &BigUint, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&value.to_str_radix(10))
}

pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<BigUint, D::Error> {
    let s = String::deserialize(deserializer)?;
    BigUint::parse_bytes(s.as_bytes(), 10)
        .ok_or_else(|| de::Error::custom(format!("not a decimal integer: {s}")))
}
