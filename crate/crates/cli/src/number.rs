//! Output number formatting.
//!
//! Derived floats carry 12 significant digits. Echoed inputs are written
//! exactly so that a report can be recomputed from itself. Non-finite values
//! are written as the strings `"infinite"` and `"undefined"` so that JSON
//! stays valid and CSV columns stay parseable.

use serde::{de, Deserialize, Deserializer, Serializer};

pub const SIGNIFICANT_DIGITS: usize = 12;
pub const INFINITE_TAG: &str = "infinite";
pub const UNDEFINED_TAG: &str = "undefined";

/// Rounds to 12 significant digits. Non-finite input passes through.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .expect("formatted float parses")
}

/// Text form used in CSV and plain-text output.
pub fn format(x: f64) -> String {
    if x.is_nan() {
        UNDEFINED_TAG.to_string()
    } else if x == f64::INFINITY {
        INFINITE_TAG.to_string()
    } else if x == f64::NEG_INFINITY {
        format!("-{INFINITE_TAG}")
    } else {
        let r = round_sig(x);
        if r == 0.0 {
            // also folds -0.0
            "0".to_string()
        } else if (1e-4..1e15).contains(&r.abs()) {
            format!("{r}")
        } else {
            format!("{r:e}")
        }
    }
}

/// Inverse of [`format`].
pub fn parse(s: &str) -> Option<f64> {
    match s {
        INFINITE_TAG => Some(f64::INFINITY),
        "-infinite" => Some(f64::NEG_INFINITY),
        UNDEFINED_TAG => Some(f64::NAN),
        _ => s.parse().ok(),
    }
}

fn write<S: Serializer>(x: f64, s: S, round: bool) -> Result<S::Ok, S::Error> {
    if !x.is_finite() {
        s.serialize_str(&format(x))
    } else if round {
        s.serialize_f64(round_sig(x))
    } else {
        s.serialize_f64(x)
    }
}

/// `#[serde(with = "tagged")]` for derived `f64` fields, rounded.
pub mod tagged {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        write(*x, s, true)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Number(f64),
            Tag(String),
        }
        match Raw::deserialize(d)? {
            Raw::Number(x) => Ok(x),
            Raw::Tag(t) => parse(&t).ok_or_else(|| de::Error::custom(format!("unknown tag {t:?}"))),
        }
    }
}

/// `#[serde(with = "exact")]` for input `f64` fields, not rounded.
pub mod exact {
    use super::*;

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        write(*x, s, false)
    }

    pub use super::tagged::deserialize;
}

/// `#[serde(with = "exact_opt")]` for input `Option<f64>` fields.
pub mod exact_opt {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(v) => write(*v, s, false),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "tagged")] f64);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

/// `#[serde(with = "exact_seq")]` for input `Vec<f64>` fields.
pub mod exact_seq {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[f64], s: S) -> Result<S::Ok, S::Error> {
        struct One(f64);
        impl serde::Serialize for One {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                write(self.0, s, false)
            }
        }
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&One(*x))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<f64>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "tagged")] f64);
        Ok(Vec::<Wrap>::deserialize(d)?
            .into_iter()
            .map(|w| w.0)
            .collect())
    }
}
