//! Serialization of rationals as `"p/q"` strings.

use serde::ser::SerializeSeq;
use serde::Serializer;
use symquiv_exact::{q_to_string, Q};

pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q_to_string(x))
}

pub fn serialize_vec<S: Serializer>(xs: &[Q], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&q_to_string(x))?;
    }
    seq.end()
}
