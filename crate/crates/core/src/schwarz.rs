//! Coefficient-body parametrizations of Caratheodory functions and Schwarz
//! functions in terms of free parameters from the closed unit disk.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{as_gauss, as_string, in_closed_unit_disk, int, real, GaussianRational, Rational};
use crate::ring::Coeff;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaratheodoryParams {
    /// Real, in `[0, 2]`.
    #[serde(with = "as_gauss")]
    pub p1: GaussianRational,
    #[serde(with = "as_gauss")]
    pub gamma: GaussianRational,
    #[serde(with = "as_gauss")]
    pub eta: GaussianRational,
    #[serde(with = "as_gauss")]
    pub rho: GaussianRational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SchwarzParams {
    /// Real, in `[0, 1]`.
    #[serde(with = "as_string")]
    pub c1: Rational,
    #[serde(with = "as_gauss")]
    pub gamma: GaussianRational,
    #[serde(with = "as_gauss")]
    pub eta: GaussianRational,
    #[serde(with = "as_gauss")]
    pub rho: GaussianRational,
}

fn check_disk(name: &str, z: &GaussianRational) -> Result<()> {
    if !in_closed_unit_disk(z) {
        return Err(Error::InvalidParameter(format!("|{name}| > 1")));
    }
    Ok(())
}

impl SchwarzParams {
    pub fn new(
        c1: Rational,
        gamma: GaussianRational,
        eta: GaussianRational,
        rho: GaussianRational,
    ) -> Result<Self> {
        let sp = SchwarzParams { c1, gamma, eta, rho };
        sp.validate()?;
        Ok(sp)
    }

    pub fn validate(&self) -> Result<()> {
        if self.c1 < Rational::zero() || self.c1 > Rational::one() {
            return Err(Error::InvalidParameter(format!("c1 = {} outside [0, 1]", self.c1)));
        }
        check_disk("gamma", &self.gamma)?;
        check_disk("eta", &self.eta)?;
        check_disk("rho", &self.rho)
    }
}

impl CaratheodoryParams {
    pub fn validate(&self) -> Result<()> {
        let p1 = &self.p1;
        if !p1.im.is_zero() || p1.re < Rational::zero() || p1.re > int(2) {
            return Err(Error::InvalidParameter(format!("p1 = {p1} must be real in [0, 2]")));
        }
        check_disk("gamma", &self.gamma)?;
        check_disk("eta", &self.eta)?;
        check_disk("rho", &self.rho)
    }
}

/// `(p2, p3, p4)` of a Caratheodory function from `p1` and the disk parameters.
pub fn caratheodory_coeffs(cp: &CaratheodoryParams) -> Result<(GaussianRational, GaussianRational, GaussianRational)> {
    cp.validate()?;
    let p1 = &cp.p1;
    let (g, e, r) = (&cp.gamma, &cp.eta, &cp.rho);
    let one = real(int(1));
    let four_minus = one.int(4).sub(&p1.sq());
    let gg = one.sub(&g.mul(&g.conj()));
    let ee = one.sub(&e.mul(&e.conj()));

    let p2 = p1.sq().add(&g.mul(&four_minus)).rscale(&crate::rational::rat(1, 2));

    let p3 = p1
        .pow(3)
        .add(&four_minus.mul(p1).mul(g).rscale(&int(2)))
        .sub(&four_minus.mul(p1).mul(&g.sq()))
        .add(&four_minus.mul(&gg).mul(e).rscale(&int(2)))
        .rscale(&crate::rational::rat(1, 4));

    let inner = p1.sq().mul(&g.sq().sub(&g.rscale(&int(3))).add(&one.int(3))).add(&g.rscale(&int(4)));
    let tail = p1
        .mul(&g.sub(&one))
        .mul(e)
        .add(&g.conj().mul(&e.sq()))
        .sub(&ee.mul(r));
    let p4 = p1
        .pow(4)
        .add(&four_minus.mul(g).mul(&inner))
        .sub(&four_minus.mul(&gg).mul(&tail).rscale(&int(4)))
        .rscale(&crate::rational::rat(1, 8));

    Ok((p2, p3, p4))
}

/// `(c2, c3, c4)` written over any coefficient ring. `gb` and `eb` stand for
/// the conjugates of `g` and `e`, so this also works with formal variables.
pub fn schwarz_coeffs_generic<T: Coeff>(c1: &T, g: &T, gb: &T, e: &T, eb: &T, r: &T) -> (T, T, T) {
    let one = c1.int(1);
    let s = one.sub(&c1.sq());
    let gg = one.sub(&g.mul(gb));
    let ee = one.sub(&e.mul(eb));
    let c2 = s.mul(g);
    let c3 = s.mul(&e.mul(&gg).sub(&c1.mul(&g.sq())));
    let c4 = s.mul(
        &c1.sq()
            .mul(&g.pow(3))
            .sub(&gg.mul(&c1.mul(g).mul(e).rscale(&int(2)).add(&gb.mul(&e.sq()))))
            .add(&gg.mul(&ee).mul(r)),
    );
    (c2, c3, c4)
}

/// `(c2, c3, c4)` of a Schwarz function with real `c1 >= 0`.
pub fn schwarz_coeffs(sp: &SchwarzParams) -> Result<(GaussianRational, GaussianRational, GaussianRational)> {
    sp.validate()?;
    let c1 = real(sp.c1.clone());
    Ok(schwarz_coeffs_generic(
        &c1,
        &sp.gamma,
        &sp.gamma.conj(),
        &sp.eta,
        &sp.eta.conj(),
        &sp.rho,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{gauss, rat};

    fn zero() -> GaussianRational {
        real(int(0))
    }

    #[test]
    fn caratheodory_boundary_and_unit_cases() {
        let cp = CaratheodoryParams {
            p1: real(int(2)),
            gamma: gauss(rat(3, 5), rat(-4, 5)),
            eta: gauss(rat(1, 2), rat(1, 3)),
            rho: real(int(-1)),
        };
        let (p2, p3, p4) = caratheodory_coeffs(&cp).unwrap();
        assert_eq!((p2, p3, p4), (real(int(2)), real(int(2)), real(int(2))));

        let cp = CaratheodoryParams {
            p1: zero(),
            gamma: real(int(1)),
            eta: zero(),
            rho: zero(),
        };
        assert_eq!(caratheodory_coeffs(&cp).unwrap().0, real(int(2)));

        let cp = CaratheodoryParams {
            p1: zero(),
            gamma: zero(),
            eta: real(int(1)),
            rho: zero(),
        };
        let (p2, p3, _) = caratheodory_coeffs(&cp).unwrap();
        assert_eq!((p2, p3), (zero(), real(int(2))));
    }

    #[test]
    fn caratheodory_rejects_bad_parameters() {
        let cp = CaratheodoryParams {
            p1: real(int(3)),
            gamma: zero(),
            eta: zero(),
            rho: zero(),
        };
        assert!(caratheodory_coeffs(&cp).is_err());
        let cp = CaratheodoryParams {
            p1: real(int(1)),
            gamma: gauss(int(1), rat(1, 10)),
            eta: zero(),
            rho: zero(),
        };
        assert!(caratheodory_coeffs(&cp).is_err());
    }

    #[test]
    fn schwarz_examples() {
        let sp = SchwarzParams::new(int(1), gauss(rat(1, 2), rat(1, 2)), real(int(1)), zero()).unwrap();
        assert_eq!(schwarz_coeffs(&sp).unwrap(), (zero(), zero(), zero()));

        let sp = SchwarzParams::new(int(0), real(int(1)), zero(), zero()).unwrap();
        assert_eq!(schwarz_coeffs(&sp).unwrap(), (real(int(1)), zero(), zero()));

        let sp = SchwarzParams::new(int(0), zero(), real(int(1)), zero()).unwrap();
        assert_eq!(schwarz_coeffs(&sp).unwrap(), (zero(), real(int(1)), zero()));

        assert!(SchwarzParams::new(rat(3, 2), zero(), zero(), zero()).is_err());
        assert!(SchwarzParams::new(rat(-1, 2), zero(), zero(), zero()).is_err());
    }

    #[test]
    fn unimodular_gamma_ignores_eta_and_rho() {
        let g = gauss(rat(3, 5), rat(4, 5));
        let a = SchwarzParams::new(rat(1, 3), g.clone(), zero(), zero()).unwrap();
        let b = SchwarzParams::new(rat(1, 3), g, gauss(rat(1, 2), rat(-1, 2)), real(int(-1))).unwrap();
        assert_eq!(schwarz_coeffs(&a).unwrap(), schwarz_coeffs(&b).unwrap());
    }
}
