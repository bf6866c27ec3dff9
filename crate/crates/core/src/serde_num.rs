//! Big integers as JSON numbers (decimal, arbitrary precision).

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Number;

fn to_number<E: serde::ser::Error>(v: &BigUint) -> Result<Number, E> {
    v.to_string().parse().map_err(E::custom)
}

fn from_number<E: serde::de::Error>(n: &Number) -> Result<BigUint, E> {
    n.to_string().parse().map_err(E::custom)
}

pub(crate) mod one {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        to_number(v)?.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        from_number(&Number::deserialize(d)?)
    }
}

pub(crate) mod list {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(to_number).collect::<Result<Vec<_>, _>>()?.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigUint>, D::Error> {
        Vec::<Number>::deserialize(d)?.iter().map(from_number).collect()
    }
}

pub(crate) mod option {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        v.as_ref().map(to_number).transpose()?.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        Option::<Number>::deserialize(d)?.as_ref().map(from_number).transpose()
    }
}
