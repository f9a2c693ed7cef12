//! Truncated power series in one variable with rational coefficients.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{as_string_vec, Rational};

pub const DEFAULT_ORDER: usize = 16;

/// `c_0 + c_1 z + ... + c_N z^N`, exact modulo `z^{N+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSeries {
    #[serde(with = "as_string_vec")]
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, Rational::one(), order)
    }

    /// `c z^k` (zero if `k` exceeds the order).
    pub fn monomial(k: usize, c: Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// Truncates or zero-pads `coeffs` to the given order.
    pub fn from_coeffs(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn common_order(&self, other: &Self) -> usize {
        self.order().min(other.order())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        PowerSeries {
            coeffs: (0..=n).map(|k| self.coeff(k) + other.coeff(k)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        PowerSeries {
            coeffs: (0..=n).map(|k| self.coeff(k) - other.coeff(k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common_order(other);
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `z f'(z)`.
    pub fn z_derivative(&self) -> Self {
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, a)| a * Rational::from_integer(k.into()))
                .collect(),
        }
    }

    /// `f(z^k)`, same order.
    pub fn substitute_power(&self, k: usize) -> Self {
        let mut out = Self::zero(self.order());
        for (i, a) in self.coeffs.iter().enumerate() {
            if i * k <= self.order() {
                out.coeffs[i * k] += a;
            }
        }
        out
    }

    /// `exp(s)` for `s(0) = 0`, via `n e_n = sum_{k=1..n} k s_k e_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidParameter(
                "exp needs a series with zero constant term".into(),
            ));
        }
        let n = self.order();
        let mut e = vec![Rational::zero(); n + 1];
        e[0] = Rational::one();
        for m in 1..=n {
            let mut acc = Rational::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc += &self.coeffs[k] * Rational::from_integer(k.into()) * &e[m - k];
                }
            }
            e[m] = acc / Rational::from_integer(m.into());
        }
        Ok(PowerSeries { coeffs: e })
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format!("{c}"),
                1 => format!("{c}*z"),
                _ => format!("{c}*z^{k}"),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")?;
        } else {
            write!(f, "{}", parts.join(" + "))?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn exp_of_zero_is_one() {
        assert_eq!(PowerSeries::zero(8).exp().unwrap(), PowerSeries::one(8));
        assert!(PowerSeries::one(4).exp().is_err());
    }

    #[test]
    fn exp_of_even_quartic() {
        let alpha = rat(1, 8);
        let s = PowerSeries::monomial(2, rat(1, 2), 8).add(&PowerSeries::monomial(4, alpha.clone(), 8));
        let e = s.exp().unwrap();
        assert_eq!(e.coeff(2), rat(1, 2));
        assert_eq!(e.coeff(4), &alpha + rat(1, 8));
        assert_eq!(e.coeff(6), &alpha / Rational::from_integer(2.into()) + rat(1, 48));
        assert_eq!(e.coeff(3), Rational::zero());
    }

    #[test]
    fn exp_of_cubic_profile() {
        let alpha = rat(1, 6);
        let s = PowerSeries::monomial(3, rat(1, 3), 12).add(&PowerSeries::monomial(6, alpha.clone(), 12));
        let e = s.exp().unwrap();
        assert_eq!(e.coeff(9), &alpha / Rational::from_integer(3.into()) + rat(1, 162));
    }

    #[test]
    fn substitution_rescales_indices() {
        let s = PowerSeries::from_coeffs(vec![rat(1, 1), rat(2, 1), rat(3, 1)], 6);
        let t = s.substitute_power(3);
        assert_eq!(t.coeffs(), &[rat(1, 1), rat(0, 1), rat(0, 1), rat(2, 1), rat(0, 1), rat(0, 1), rat(3, 1)]);
    }
}
