//! Versioned JSON documents with fixed 17-significant-digit numbers.
//!
//! Every float is written as `{:.16e}`, which round-trips any `f64` and makes
//! output byte-identical for identical input. Non-finite values become `null`.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

/// Value of the top-level `"schema"` field in every document.
pub const SCHEMA: &str = "bochner-bounds/1";

struct FixedFloat<'a>(PrettyFormatter<'a>);

impl Formatter for FixedFloat<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Pretty JSON with every float at 17 significant digits.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloat(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

#[derive(Serialize)]
struct Document<'a, T: Serialize + ?Sized> {
    schema: &'static str,
    #[serde(flatten)]
    body: &'a T,
}

/// `body`'s fields preceded by `"schema": "bochner-bounds/1"`.
///
/// `body` must serialize as a map (a struct or a map type).
pub fn document<T: Serialize + ?Sized>(body: &T) -> serde_json::Result<String> {
    to_json(&Document {
        schema: SCHEMA,
        body,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn floats_round_trip_at_seventeen_digits() {
        let xs = [0.1, 1.0 / 3.0, 2.0f64.sqrt(), 1e-300, -7.0, 0.0, f64::MAX];
        let s = to_json(&xs).unwrap();
        assert!(s.contains("1.0000000000000001e-1"));
        assert!(s.contains("-7.0000000000000000e0"));
        let back: Vec<f64> = serde_json::from_str(&s).unwrap();
        for (a, b) in xs.iter().zip(&back) {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn non_finite_is_null() {
        assert_eq!(to_json(&[f64::NAN]).unwrap().split_whitespace().collect::<String>(), "[null]");
    }

    #[test]
    fn schema_comes_first() {
        let mut m = BTreeMap::new();
        m.insert("x", 0.5);
        let s = document(&m).unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["x"], 0.5);
        assert!(s.find("schema").unwrap() < s.find("\"x\"").unwrap());
        assert_eq!(s, document(&m).unwrap());
    }
}
