//! Integers extended by `-inf` and `+inf`.
//!
//! Used both for valuation values (`v(0) = +inf`) and for the per-component
//! bounds of homogeneous subrings. Addition is absorbing with `+inf`
//! dominating: a `+inf` summand stands for a zero component, so the product
//! it belongs to contributes nothing, whatever the other factor is.

use std::fmt;
use std::ops::{Add, Neg};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ext {
    NegInf,
    Fin(i64),
    PosInf,
}

impl Ext {
    pub const ZERO: Ext = Ext::Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Ext::Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Ext::Fin(v) => Some(v),
            _ => None,
        }
    }

    /// `self + k` for a finite shift.
    pub fn shift(self, k: i64) -> Ext {
        match self {
            Ext::Fin(v) => Ext::Fin(v + k),
            other => other,
        }
    }

    /// Saturating difference `self - other` used when comparing against a
    /// bound; `inf - inf` is not meaningful and yields `None`.
    pub fn checked_sub(self, other: Ext) -> Option<Ext> {
        match (self, other) {
            (Ext::Fin(a), Ext::Fin(b)) => Some(Ext::Fin(a - b)),
            (Ext::PosInf, Ext::PosInf) | (Ext::NegInf, Ext::NegInf) => None,
            (Ext::PosInf, _) | (_, Ext::NegInf) => Some(Ext::PosInf),
            (Ext::NegInf, _) | (_, Ext::PosInf) => Some(Ext::NegInf),
        }
    }
}

impl Add for Ext {
    type Output = Ext;

    fn add(self, rhs: Ext) -> Ext {
        match (self, rhs) {
            (Ext::PosInf, _) | (_, Ext::PosInf) => Ext::PosInf,
            (Ext::NegInf, _) | (_, Ext::NegInf) => Ext::NegInf,
            (Ext::Fin(a), Ext::Fin(b)) => Ext::Fin(a + b),
        }
    }
}

impl Add<i64> for Ext {
    type Output = Ext;

    fn add(self, rhs: i64) -> Ext {
        self.shift(rhs)
    }
}

impl Neg for Ext {
    type Output = Ext;

    fn neg(self) -> Ext {
        match self {
            Ext::NegInf => Ext::PosInf,
            Ext::PosInf => Ext::NegInf,
            Ext::Fin(v) => Ext::Fin(-v),
        }
    }
}

impl From<i64> for Ext {
    fn from(v: i64) -> Self {
        Ext::Fin(v)
    }
}

impl fmt::Display for Ext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ext::NegInf => f.write_str("-inf"),
            Ext::PosInf => f.write_str("+inf"),
            Ext::Fin(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not an extended integer: {0:?}")]
pub struct ParseExtError(pub String);

impl FromStr for Ext {
    type Err = ParseExtError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "+inf" | "inf" | "+∞" | "∞" => Ok(Ext::PosInf),
            "-inf" | "-∞" => Ok(Ext::NegInf),
            t => t
                .parse::<i64>()
                .map(Ext::Fin)
                .map_err(|_| ParseExtError(s.to_string())),
        }
    }
}

impl Serialize for Ext {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Ext::Fin(v) => serializer.serialize_i64(*v),
            other => serializer.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Ext {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Int(v) => Ok(Ext::Fin(v)),
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_absorption() {
        assert!(Ext::NegInf < Ext::Fin(-100));
        assert!(Ext::Fin(100) < Ext::PosInf);
        assert_eq!(Ext::NegInf + Ext::PosInf, Ext::PosInf);
        assert_eq!(Ext::NegInf + Ext::Fin(3), Ext::NegInf);
        assert_eq!(Ext::Fin(2) + Ext::Fin(3), Ext::Fin(5));
        assert_eq!(-Ext::NegInf, Ext::PosInf);
    }

    #[test]
    fn parse_and_serialize() {
        assert_eq!("-inf".parse::<Ext>().unwrap(), Ext::NegInf);
        assert_eq!("+inf".parse::<Ext>().unwrap(), Ext::PosInf);
        assert_eq!(" 7 ".parse::<Ext>().unwrap(), Ext::Fin(7));
        assert!("seven".parse::<Ext>().is_err());
        let json = serde_json::to_string(&vec![Ext::Fin(1), Ext::NegInf]).unwrap();
        assert_eq!(json, r#"[1,"-inf"]"#);
        let back: Vec<Ext> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![Ext::Fin(1), Ext::NegInf]);
    }
}
