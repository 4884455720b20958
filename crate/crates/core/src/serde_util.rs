//! Serialization of exact numbers as decimal strings.

use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serializer;

use crate::level::format_rational;

pub fn ratio<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn biguint<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&n.to_string())
}

pub fn opt_pair<S: Serializer>(p: &Option<(BigUint, BigUint)>, s: S) -> Result<S::Ok, S::Error> {
    match p {
        Some((a, b)) => s.collect_seq([a.to_string(), b.to_string()]),
        None => s.serialize_none(),
    }
}

pub fn opt_biguint<S: Serializer>(n: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match n {
        Some(n) => biguint(n, s),
        None => s.serialize_none(),
    }
}
