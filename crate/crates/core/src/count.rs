//! Serialization of exact counts: a JSON number when the value fits in
//! `u64`, a decimal string otherwise.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serializer;

pub(crate) fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    match v.to_u64() {
        Some(x) => s.serialize_u64(x),
        None => s.serialize_str(&v.to_string()),
    }
}

pub(crate) mod option {
    use super::*;

    pub(crate) fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => super::serialize(x, s),
            None => s.serialize_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use num_bigint::BigUint;
    use serde::Serialize;

    #[derive(Serialize)]
    struct Wrap(#[serde(serialize_with = "super::serialize")] BigUint);

    #[test]
    fn small_and_large() {
        assert_eq!(serde_json::to_string(&Wrap(BigUint::from(27u32))).unwrap(), "27");
        let big = BigUint::from(10u32).pow(30);
        assert_eq!(serde_json::to_string(&Wrap(big)).unwrap(), "\"1000000000000000000000000000000\"");
    }
}
