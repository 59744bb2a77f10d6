use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const SCHEMA_VERSION: u32 = 1;

/// `r` as it appears in output: an integer, or the string `"symbolic"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RValue {
    Numeric(u32),
    Symbolic,
}

impl fmt::Display for RValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RValue::Numeric(r) => write!(f, "{r}"),
            RValue::Symbolic => write!(f, "symbolic"),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RWire {
    Numeric(u32),
    Name(String),
}

impl Serialize for RValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            RValue::Numeric(r) => s.serialize_u32(*r),
            RValue::Symbolic => s.serialize_str("symbolic"),
        }
    }
}

impl<'de> Deserialize<'de> for RValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match RWire::deserialize(d)? {
            RWire::Numeric(r) => Ok(RValue::Numeric(r)),
            RWire::Name(s) if s == "symbolic" => Ok(RValue::Symbolic),
            RWire::Name(s) => Err(serde::de::Error::custom(format!("unknown r value {s:?}"))),
        }
    }
}

/// An integer coefficient: a JSON number when it fits in `i64`, a decimal
/// string otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coeff(pub BigInt);

#[derive(Deserialize)]
#[serde(untagged)]
enum CoeffWire {
    Small(i64),
    Big(String),
}

impl Serialize for Coeff {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Coeff {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match CoeffWire::deserialize(d)? {
            CoeffWire::Small(v) => Ok(Coeff(v.into())),
            CoeffWire::Big(s) => s.parse().map(Coeff).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    pub generators: Vec<String>,
    pub coeffs: Vec<Coeff>,
    pub r: RValue,
    pub g: u32,
    pub n: usize,
    /// Insertion vector, absent for rows of a reduced basis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<u32>>,
    pub source: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<RValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m_max: Option<u32>,
    #[serde(default)]
    pub raw: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub id: u8,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub limit_ms: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanRecord {
    pub rank_ppz: usize,
    pub rank_classical: usize,
    pub rank_union: usize,
    pub equal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_us: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub schema_version: u32,
    pub command: String,
    pub params: Params,
    #[serde(default)]
    pub relations: Vec<RelationRecord>,
    #[serde(default)]
    pub verdicts: Vec<VerdictRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spans: Option<SpanRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<Timing>,
}

impl OutputRecord {
    pub fn new(command: &str, params: Params) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.to_owned(),
            params,
            relations: Vec::new(),
            verdicts: Vec::new(),
            table: None,
            spans: None,
            timing: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("output record serializes")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wide_coefficients_become_strings() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let json = serde_json::to_string(&vec![Coeff(big.clone()), Coeff((-7).into())]).unwrap();
        assert_eq!(json, r#"["123456789012345678901234567890",-7]"#);
        let back: Vec<Coeff> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, vec![Coeff(big), Coeff((-7).into())]);
    }

    #[test]
    fn r_value_wire_format() {
        assert_eq!(serde_json::to_string(&RValue::Symbolic).unwrap(), r#""symbolic""#);
        assert_eq!(serde_json::from_str::<RValue>("5").unwrap(), RValue::Numeric(5));
        assert!(serde_json::from_str::<RValue>(r#""five""#).is_err());
    }
}
