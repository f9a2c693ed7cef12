//! Embedded reference values (exact rational strings) for the published tables and constants.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::rational::{as_string, Rational};

pub const EMBEDDED: &str = include_str!("../data/expected.json");

mod as_matrices {
    use super::*;
    use crate::rational::parse_rational;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Vec<Rational>>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<Vec<Vec<String>>> = m
            .iter()
            .map(|mat| mat.iter().map(|row| row.iter().map(|r| r.to_string()).collect()).collect())
            .collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Vec<Rational>>>, D::Error> {
        let strs = Vec::<Vec<Vec<String>>>::deserialize(d)?;
        strs.iter()
            .map(|mat| {
                mat.iter()
                    .map(|row| row.iter().map(|e| parse_rational(e).map_err(serde::de::Error::custom)).collect())
                    .collect()
            })
            .collect()
    }
}

mod as_grid {
    use super::*;
    use crate::rational::parse_rational;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &[Vec<Rational>], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<Vec<String>> = m.iter().map(|row| row.iter().map(|r| r.to_string()).collect()).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        let strs = Vec::<Vec<String>>::deserialize(d)?;
        strs.iter()
            .map(|row| row.iter().map(|e| parse_rational(e).map_err(serde::de::Error::custom)).collect())
            .collect()
    }
}

/// Four `7 x 5` layers `M_k[i][j] = beta_{i,j,k}` and the overall maximum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedTensor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(with = "as_string")]
    pub max: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub argmax: Option<Vec<usize>>,
    #[serde(with = "as_matrices")]
    pub matrices: Vec<Vec<Vec<Rational>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedConstants {
    #[serde(with = "as_string")]
    pub o_at_eighth: Rational,
    #[serde(with = "as_string")]
    pub l_at_eighth: Rational,
    #[serde(with = "as_string")]
    pub p_floor_at_eighth: Rational,
    #[serde(with = "as_string")]
    pub v_discriminant: Rational,
    #[serde(with = "as_string")]
    pub r1_bound: Rational,
    #[serde(with = "as_string")]
    pub r2_bound: Rational,
    #[serde(with = "as_string")]
    pub h2_c1_one: Rational,
    #[serde(with = "as_string")]
    pub h2_bound: Rational,
    #[serde(with = "as_string")]
    pub h3_bound: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expected {
    pub version: u32,
    pub rtilde_whole: ExpectedTensor,
    pub r2tilde_whole: ExpectedTensor,
    /// `M_ij` with `i` the `p` index.
    #[serde(with = "as_grid")]
    pub rtilde_grid: Vec<Vec<Rational>>,
    #[serde(with = "as_string")]
    pub rtilde_grid_other_max: Rational,
    /// Quadrants `(11), (12), (21), (22)`.
    pub r2tilde_quadrants: Vec<ExpectedTensor>,
    pub constants: ExpectedConstants,
}

impl Expected {
    pub fn embedded() -> Self {
        Self::from_json(EMBEDDED).expect("embedded expected values parse")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}
