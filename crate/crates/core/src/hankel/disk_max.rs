//! Closed form of `Y(A,B,C) = max over the closed disk of |A + Bz + Cz^2| + 1 - |z|^2`
//! for real `A, B, C`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{as_string, int, sqrt_exact, to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YInputs {
    #[serde(with = "as_string")]
    pub a: Rational,
    #[serde(with = "as_string")]
    pub b: Rational,
    #[serde(with = "as_string")]
    pub c: Rational,
}

impl YInputs {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        YInputs { a, b, c }
    }
}

/// A nonnegative real that is either rational or the square root of a rational.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "YValueJson", into = "YValueJson")]
pub enum YValue {
    Exact(Rational),
    /// `sqrt(square)`.
    Sqrt(Rational),
}

#[derive(Serialize, Deserialize)]
struct YValueJson {
    sqrt: bool,
    #[serde(with = "as_string")]
    value: Rational,
}

impl From<YValue> for YValueJson {
    fn from(v: YValue) -> Self {
        match v {
            YValue::Exact(value) => YValueJson { sqrt: false, value },
            YValue::Sqrt(value) => YValueJson { sqrt: true, value },
        }
    }
}

impl TryFrom<YValueJson> for YValue {
    type Error = crate::error::Error;

    fn try_from(j: YValueJson) -> crate::error::Result<Self> {
        if j.value.is_negative() {
            return Err(crate::error::Error::InvalidParameter("negative Y value".into()));
        }
        Ok(if j.sqrt { YValue::Sqrt(j.value) } else { YValue::Exact(j.value) })
    }
}

impl YValue {
    fn from_square(square: Rational) -> Self {
        match sqrt_exact(&square) {
            Some(r) => YValue::Exact(r),
            None => YValue::Sqrt(square),
        }
    }

    pub fn square(&self) -> Rational {
        match self {
            YValue::Exact(r) => r * r,
            YValue::Sqrt(s) => s.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            YValue::Exact(r) => Some(r),
            YValue::Sqrt(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            YValue::Exact(r) => to_f64(r),
            YValue::Sqrt(s) => to_f64(s).sqrt(),
        }
    }

    /// Exact comparison with a rational (the value itself is never negative).
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        match self {
            YValue::Exact(v) => v.cmp(r),
            YValue::Sqrt(s) => {
                if r.is_negative() {
                    Ordering::Greater
                } else {
                    s.cmp(&(r * r))
                }
            }
        }
    }
}

impl fmt::Display for YValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            YValue::Exact(r) => write!(f, "{r}"),
            YValue::Sqrt(s) => write!(f, "sqrt({s})"),
        }
    }
}

/// Which branch of the case analysis produced the value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum YCase {
    SameSignLargeB,
    SameSignSmallB,
    OppositeSignFirst,
    OppositeSignSecond,
    RSum,
    RMinusA,
    RSqrt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct YResult {
    pub value: YValue,
    pub case: YCase,
}

pub fn y_upper(y: &YInputs) -> YResult {
    let (a, b, c) = (&y.a, &y.b, &y.c);
    let (aa, ab, ac) = (a.abs(), b.abs(), c.abs());
    let b2 = b * b;
    let exact = |v: Rational, case| YResult {
        value: YValue::Exact(v),
        case,
    };
    let ac_prod = a * c;
    if !ac_prod.is_negative() {
        if ab >= int(2) * (int(1) - &ac) {
            return exact(&aa + &ab + &ac, YCase::SameSignLargeB);
        }
        return exact(int(1) + &aa + &b2 / (int(4) * (int(1) - &ac)), YCase::SameSignSmallB);
    }
    // AC < 0, so C != 0.
    let k = int(-4) * &ac_prod * ((c * c).recip() - int(1));
    if k <= b2 && ab < int(2) * (int(1) - &ac) {
        return exact(int(1) - &aa + &b2 / (int(4) * (int(1) - &ac)), YCase::OppositeSignFirst);
    }
    let cap = int(4) * (int(1) + &ac) * (int(1) + &ac);
    if b2 < cap && b2 < k {
        return exact(int(1) + &aa + &b2 / (int(4) * (int(1) + &ac)), YCase::OppositeSignSecond);
    }
    let abs_ab = &aa * &ab;
    if &ac * (&ab + int(4) * &aa) <= abs_ab {
        return exact(&aa + &ab - &ac, YCase::RSum);
    }
    if abs_ab <= &ac * (&ab - int(4) * &aa) {
        return exact(-&aa + &ab + &ac, YCase::RMinusA);
    }
    let s = &aa + &ac;
    let square = &s * &s * (int(1) - &b2 / (int(4) * &ac_prod));
    debug_assert!(!square.is_negative() || square.is_zero());
    YResult {
        value: YValue::from_square(square),
        case: YCase::RSqrt,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn y(a: Rational, b: Rational, c: Rational) -> YResult {
        y_upper(&YInputs::new(a, b, c))
    }

    #[test]
    fn same_sign_cases() {
        let r = y(int(1), int(1), int(1));
        assert_eq!(r.value, YValue::Exact(int(3)));
        assert_eq!(r.case, YCase::SameSignLargeB);
        let r = y(int(0), int(0), int(0));
        assert_eq!(r.value, YValue::Exact(int(1)));
        assert_eq!(r.case, YCase::SameSignSmallB);
    }

    #[test]
    fn sqrt_branch_is_exact() {
        // |1 + z - z^2| peaks at sqrt(5) on the unit circle.
        let r = y(int(1), int(1), int(-1));
        assert_eq!(r.case, YCase::RSqrt);
        assert_eq!(r.value.square(), int(5));
        assert!(matches!(r.value, YValue::Sqrt(_)));
        assert_eq!(r.value.cmp_rational(&rat(11, 5)), Ordering::Greater);
        assert_eq!(r.value.cmp_rational(&rat(9, 4)), Ordering::Less);
    }
}
