//! JSON output conventions: a schema tag and floats at 17 significant digits.

use serde::ser::{Error as _, SerializeSeq};
use serde::Serializer;
use serde_json::value::RawValue;

pub const SCHEMA: &str = "transit-spectra/1";

/// A float rendered with 17 significant digits, or `null` when not finite.
pub fn format_f17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        "null".to_string()
    }
}

fn raw(x: f64) -> Result<Box<RawValue>, serde_json::Error> {
    RawValue::from_string(format_f17(x))
}

pub fn f17<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_some(&raw(*x).map_err(S::Error::custom)?)
}

pub fn f17_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => f17(v, s),
        None => s.serialize_none(),
    }
}

pub fn f17_seq<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for &x in xs {
        seq.serialize_element(&raw(x).map_err(S::Error::custom)?)?;
    }
    seq.end()
}
