//! Exact checks for `phi(z) = 1 + z + (m/n) z^2` and the extremal power series.

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{as_string, int, rat, Rational};
use crate::series::PowerSeries;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiSpec {
    pub m: u64,
    pub n: u64,
    #[serde(with = "as_string")]
    pub a: Rational,
}

impl PhiSpec {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidParameter(format!("m = {m}, n = {n} must both be positive")));
        }
        Ok(PhiSpec {
            m,
            n,
            a: Rational::new(m.into(), n.into()),
        })
    }

    /// The convention `2m <= n`.
    pub fn admissible(&self) -> bool {
        2 * u128::from(self.m) <= u128::from(self.n)
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        Rational::one() + z + &self.a * z * z
    }

    /// `phi(w)` as a series, truncated at the order of `w`.
    pub fn compose(&self, w: &PowerSeries) -> PowerSeries {
        let one = PowerSeries::one(w.order());
        one.add(w).add(&w.mul(w).scale(&self.a))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnivalenceWitness {
    #[serde(with = "as_string")]
    pub z1: Rational,
    #[serde(with = "as_string")]
    pub z2: Rational,
    #[serde(with = "as_string")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnivalenceReport {
    pub univalent: bool,
    pub witness: Option<UnivalenceWitness>,
}

/// Univalent iff `a <= 1/2`; otherwise two interior points with equal image,
/// placed symmetrically about the critical point `-1/(2a)`.
pub fn univalence_check(spec: &PhiSpec) -> UnivalenceReport {
    if spec.a <= rat(1, 2) {
        return UnivalenceReport {
            univalent: true,
            witness: None,
        };
    }
    let c = -(int(2) * &spec.a).recip();
    let eps = (int(1) - c.abs()) / int(2);
    let z1 = &c + &eps;
    let z2 = &c - &eps;
    let value = spec.eval(&z1);
    debug_assert_eq!(value, spec.eval(&z2));
    UnivalenceReport {
        univalent: false,
        witness: Some(UnivalenceWitness { z1, z2, value }),
    }
}

impl UnivalenceWitness {
    /// Both points distinct, strictly inside the disk, with equal images.
    pub fn verify(&self, spec: &PhiSpec) -> bool {
        self.z1 != self.z2
            && self.z1.abs() < Rational::one()
            && self.z2.abs() < Rational::one()
            && spec.eval(&self.z1) == self.value
            && spec.eval(&self.z2) == self.value
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarlikeWitness {
    #[serde(with = "as_string")]
    pub r: Rational,
    /// `(1 - 2ar)/(1 - ar)`, the real part at `z = -r`.
    #[serde(with = "as_string")]
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarlikeReport {
    pub starlike: bool,
    pub witness: Option<StarlikeWitness>,
}

/// Starlike with respect to 1 iff `Re((1+2az)/(1+az)) > 0` on the disk, i.e. `a <= 1/2`.
pub fn starlike_wrt_one_check(spec: &PhiSpec) -> StarlikeReport {
    let a = &spec.a;
    if *a <= rat(1, 2) {
        return StarlikeReport {
            starlike: true,
            witness: None,
        };
    }
    let lo = (int(2) * a).recip();
    let hi = a.recip().min(int(1));
    let r = (&lo + &hi) / int(2);
    let value = (int(1) - int(2) * a * &r) / (int(1) - a * &r);
    StarlikeReport {
        starlike: false,
        witness: Some(StarlikeWitness { r, value }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RePositivityReport {
    /// `min of q(x) = 2a x^2 + x + 1 - a` over `[-1, 1]`.
    #[serde(with = "as_string")]
    pub minimum: Rational,
    #[serde(with = "as_string")]
    pub argmin: Rational,
    /// `8a^2 - 8a + 1`.
    #[serde(with = "as_string")]
    pub threshold_sign: Rational,
    pub positive: bool,
}

/// `q(x) = 2a x^2 + x + 1 - a`.
pub fn q_of(a: &Rational, x: &Rational) -> Rational {
    int(2) * a * x * x + x + int(1) - a
}

/// Boundary minimum of `Re phi`, decided by the sign of `8a^2 - 8a + 1`.
pub fn re_positivity_check(spec: &PhiSpec) -> RePositivityReport {
    let a = &spec.a;
    let threshold_sign = int(8) * a * a - int(8) * a + int(1);
    let (argmin, minimum) = if *a <= rat(1, 4) {
        (int(-1), q_of(a, &int(-1)))
    } else {
        let x0 = -(int(4) * a).recip();
        let v = int(1) - a - (int(8) * a).recip();
        debug_assert_eq!(v, q_of(a, &x0));
        (x0, v)
    };
    let positive = *a <= rat(1, 4) || !threshold_sign.is_positive();
    debug_assert_eq!(positive, !minimum.is_negative());
    RePositivityReport {
        minimum,
        argmin,
        threshold_sign,
        positive,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtremalKind {
    H2,
    H3,
}

impl ExtremalKind {
    /// The exponent `k` of the Schwarz function `w(z) = z^k`.
    pub fn power(self) -> usize {
        match self {
            ExtremalKind::H2 => 2,
            ExtremalKind::H3 => 3,
        }
    }

    pub fn min_order(self) -> usize {
        match self {
            ExtremalKind::H2 => 7,
            ExtremalKind::H3 => 10,
        }
    }
}

pub fn schwarz_power(k: usize, order: usize) -> PowerSeries {
    PowerSeries::monomial(k, Rational::one(), order)
}

/// `z exp(z^k/k + a z^{2k}/(2k))`, the solution of `z f'/f = phi(z^k)`.
pub fn extremal_function(kind: ExtremalKind, spec: &PhiSpec, order: usize) -> Result<PowerSeries> {
    if order < kind.min_order() {
        return Err(Error::InvalidParameter(format!(
            "order {order} below {} for {kind:?}",
            kind.min_order()
        )));
    }
    let k = kind.power();
    let kk = Rational::from_integer(k.into());
    let exponent = PowerSeries::monomial(k, kk.recip(), order)
        .add(&PowerSeries::monomial(2 * k, &spec.a / (int(2) * &kk), order));
    let e = exponent.exp()?;
    Ok(PowerSeries::monomial(1, Rational::one(), order).mul(&e))
}

/// `z f'(z) - f(z) phi(w(z))`; zero means the subordination equation holds.
pub fn subordination_roundtrip(f: &PowerSeries, w: &PowerSeries, spec: &PhiSpec) -> Result<PowerSeries> {
    if !f.coeff(0).is_zero() || !f.coeff(1).is_one() || !w.coeff(0).is_zero() {
        return Err(Error::InvalidParameter(
            "need f(0) = 0, f'(0) = 1 and w(0) = 0".into(),
        ));
    }
    Ok(f.z_derivative().sub(&f.mul(&spec.compose(w))))
}

/// All property gates for one `phi`, kept as separate verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiReport {
    pub spec: PhiSpec,
    /// `2m <= n`.
    pub admissible: bool,
    pub univalence: UnivalenceReport,
    pub starlike: StarlikeReport,
    pub re_positivity: RePositivityReport,
}

impl PhiReport {
    pub fn all_pass(&self) -> bool {
        self.univalence.univalent && self.starlike.starlike && self.re_positivity.positive
    }
}

pub fn phi_report(spec: &PhiSpec) -> PhiReport {
    PhiReport {
        spec: spec.clone(),
        admissible: spec.admissible(),
        univalence: univalence_check(spec),
        starlike: starlike_wrt_one_check(spec),
        re_positivity: re_positivity_check(spec),
    }
}
