//! Serde adapters writing rationals as `["num", "den"]` decimal strings.

use serde::de::Error;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::{self, Rational};

pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    rational::to_strings(r).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let [n, den] = <[String; 2]>::deserialize(d)?;
    rational::from_strings(&n, &den).ok_or_else(|| D::Error::custom(format!("bad rational [{n:?}, {den:?}]")))
}

pub mod vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<[String; 2]> = v.iter().map(rational::to_strings).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<[String; 2]>::deserialize(d)?;
        raw.into_iter()
            .map(|[n, den]| {
                rational::from_strings(&n, &den)
                    .ok_or_else(|| D::Error::custom(format!("bad rational [{n:?}, {den:?}]")))
            })
            .collect()
    }
}
