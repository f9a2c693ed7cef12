//! Exact scalars.
//!
//! [`Rational`] is an arbitrary-precision fraction kept in lowest terms with a
//! positive denominator, so structural equality is value equality.
//! [`GaussianRational`] is its complex extension.

use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type GaussianRational = Complex<Rational>;

/// Builds the canonical reduced fraction `n/d`.
pub fn rat_normalize(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Rational> {
    let d = d.into();
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(n.into(), d))
}

/// Shorthand for small literal fractions. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    rat_normalize(n, d).expect("literal fraction with zero denominator")
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(n.into())
}

pub fn gauss(re: Rational, im: Rational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn real(re: Rational) -> GaussianRational {
    Complex::new(re, Rational::zero())
}

/// Parses `"n"`, `"-n"` or `"n/d"` (surrounding whitespace allowed).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::ParseRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            rat_normalize(n, d)
        }
        None => BigInt::from_str(s)
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
    }
}

/// Lossless `{"num": "...", "den": "..."}` form used by every JSON format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalRepr {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for RationalRepr {
    fn from(r: &Rational) -> Self {
        RationalRepr {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

impl TryFrom<&RationalRepr> for Rational {
    type Error = Error;

    fn try_from(r: &RationalRepr) -> Result<Rational> {
        let n = BigInt::from_str(&r.num).map_err(|_| Error::ParseRational(r.num.clone()))?;
        let d = BigInt::from_str(&r.den).map_err(|_| Error::ParseRational(r.den.clone()))?;
        rat_normalize(n, d)
    }
}

/// Serde adapter storing a rational as its `"n/d"` string.
pub mod as_string {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter storing a rational as `{"num","den"}`.
pub mod as_repr {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        RationalRepr::from(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let repr = RationalRepr::deserialize(d)?;
        Rational::try_from(&repr).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of rationals as `"n/d"` strings.
pub mod as_string_vec {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = v.iter().map(|r| r.to_string()).collect();
        strs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        strs.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter storing a Gaussian rational as `["re", "im"]`.
pub mod as_gauss {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(z: &GaussianRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        [z.re.to_string(), z.im.to_string()].serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<GaussianRational, D::Error> {
        let [re, im] = <[String; 2]>::deserialize(d)?;
        let re = parse_rational(&re).map_err(serde::de::Error::custom)?;
        let im = parse_rational(&im).map_err(serde::de::Error::custom)?;
        Ok(gauss(re, im))
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

/// Exact `|z|^2`.
pub fn modulus_sq(z: &GaussianRational) -> Rational {
    z.norm_sqr()
}

/// `|z| <= 1` decided without square roots.
pub fn in_closed_unit_disk(z: &GaussianRational) -> bool {
    z.norm_sqr() <= Rational::one()
}

/// Exact rational square root, when one exists.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    (&n * &n == *r.numer() && &d * &d == *r.denom()).then(|| BigRational::new(n, d))
}

pub fn min_max<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<(Rational, Rational)> {
    let mut it = values.into_iter();
    let first = it.next()?;
    let (mut lo, mut hi) = (first, first);
    for v in it {
        if v < lo {
            lo = v;
        }
        if v > hi {
            hi = v;
        }
    }
    Some((lo.clone(), hi.clone()))
}
