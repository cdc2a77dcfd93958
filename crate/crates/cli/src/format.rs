//! Number formatting for table and trace output.

use serde::Serializer;
use serde_json::value::RawValue;

/// Six significant digits, fixed notation for moderate magnitudes.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.5e}");
    let exp: i32 = sci[sci.find('e').expect("exponent") + 1..].parse().expect("integer exponent");
    if (-5..6).contains(&exp) {
        format!("{:.*}", (5 - exp).max(0) as usize, x)
    } else {
        sci
    }
}

/// Seventeen significant digits, enough to round-trip any `f64`.
pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serializes a float as a JSON number with 17 significant digits, or
/// `null` when it is not finite.
pub fn json_f64<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    let text = if x.is_finite() { sig17(*x) } else { "null".into() };
    let raw = RawValue::from_string(text).map_err(serde::ser::Error::custom)?;
    serde::Serialize::serialize(&raw, s)
}

pub fn json_f64_vec<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&Sig17(*x))?;
    }
    seq.end()
}

pub fn json_f64_rows<S: Serializer>(rows: &[Vec<f64>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for row in rows {
        seq.serialize_element(&Sig17Vec(row))?;
    }
    seq.end()
}

pub fn json_pair_rows<S: Serializer>(rows: &[Vec<[f64; 2]>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(rows.len()))?;
    for row in rows {
        let pairs: Vec<[Sig17; 2]> = row.iter().map(|[re, im]| [Sig17(*re), Sig17(*im)]).collect();
        seq.serialize_element(&pairs)?;
    }
    seq.end()
}

/// A float that serializes through [`json_f64`].
#[derive(Debug, Clone, Copy)]
pub struct Sig17(pub f64);

impl serde::Serialize for Sig17 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        json_f64(&self.0, s)
    }
}

struct Sig17Vec<'a>(&'a [f64]);

impl serde::Serialize for Sig17Vec<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        json_f64_vec(self.0, s)
    }
}
