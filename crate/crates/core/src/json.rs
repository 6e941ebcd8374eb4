//! JSON conventions shared by every exported record: complex numbers are
//! `{"re": .., "im": ..}` objects and big integers are decimal strings.

use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::linalg::C64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<C64> for JsonComplex {
    fn from(z: C64) -> Self {
        JsonComplex { re: z.re, im: z.im }
    }
}

impl From<JsonComplex> for C64 {
    fn from(z: JsonComplex) -> Self {
        C64::new(z.re, z.im)
    }
}

pub fn complex(z: C64) -> Value {
    json!({ "re": z.re, "im": z.im })
}

pub fn big(v: &BigUint) -> Value {
    Value::String(v.to_string())
}

pub fn big_signed(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

/// Serde adapter for `BigUint` fields as decimal strings.
pub mod biguint_string {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `C64` fields as `{re, im}`.
pub mod complex_object {
    use super::JsonComplex;
    use crate::linalg::C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &C64, s: S) -> Result<S::Ok, S::Error> {
        JsonComplex::from(*v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        Ok(JsonComplex::deserialize(d)?.into())
    }
}

/// Serde adapter for `Option<C64>` fields; `None` becomes `null`.
pub mod optional_complex {
    use super::JsonComplex;
    use crate::linalg::C64;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<C64>, s: S) -> Result<S::Ok, S::Error> {
        v.map(JsonComplex::from).serialize(s)
    }
}
