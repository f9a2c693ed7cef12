//! Taylor coefficients from Schwarz coefficients, the two Hankel determinants,
//! and their parametrized forms. Every formula is generic over [`Coeff`] so it
//! can be evaluated on Gaussian rationals or expanded symbolically.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, rat, real, GaussianRational, Rational};
use crate::ring::Coeff;
use crate::schwarz::SchwarzParams;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaylorCoeffs<T = GaussianRational> {
    pub a2: T,
    pub a3: T,
    pub a4: T,
    pub a5: T,
}

/// Whether `t` lies in the range `(0, 1/2]` the bounds are stated for.
pub fn admissible_t(t: &Rational) -> bool {
    *t > int(0) && *t <= rat(1, 2)
}

/// `a2..a5` of `f` with `z f'/f = 1 + w + t w^2`, `w = c1 z + c2 z^2 + ...`.
/// No range check on `t`; see [`admissible_t`].
pub fn taylor_from_schwarz<T: Coeff>(c1: &T, c2: &T, c3: &T, c4: &T, t: &T) -> TaylorCoeffs<T> {
    let k = |n: i64| c1.int(n);
    let a2 = c1.clone();
    let a3 = k(1).add(t).mul(&c1.sq()).add(c2).rscale(&rat(1, 2));
    let a4 = k(1)
        .add(&t.rscale(&int(3)))
        .mul(&c1.pow(3))
        .add(&k(3).add(&t.rscale(&int(4))).mul(c1).mul(c2))
        .add(&c3.rscale(&int(2)))
        .rscale(&rat(1, 6));
    let a5 = k(1)
        .add(&t.rscale(&int(6)))
        .add(&t.sq().rscale(&int(3)))
        .mul(&c1.pow(4))
        .add(&k(3).add(&t.rscale(&int(11))).mul(&c1.sq()).mul(c2).rscale(&int(2)))
        .add(&k(3).add(&t.rscale(&int(6))).mul(&c2.sq()))
        .add(&k(2).add(&t.rscale(&int(3))).mul(c1).mul(c3).rscale(&int(4)))
        .add(&c4.rscale(&int(6)))
        .rscale(&rat(1, 24));
    TaylorCoeffs { a2, a3, a4, a5 }
}

/// `(H2(2), H3(1))` with `a1 = 1`.
pub fn hankel_values<T: Coeff>(tc: &TaylorCoeffs<T>) -> (T, T) {
    let TaylorCoeffs { a2, a3, a4, a5 } = tc;
    let h2 = a2.mul(a4).sub(&a3.sq());
    let h3 = a3
        .mul(&h2)
        .sub(&a4.mul(&a4.sub(&a2.mul(a3))))
        .add(&a5.mul(&a3.sub(&a2.sq())));
    (h2, h3)
}

/// `H2(2)` directly in the Schwarz coefficients.
pub fn h2_of_c<T: Coeff>(c1: &T, c2: &T, c3: &T, t: &T) -> T {
    let k = |n: i64| c1.int(n);
    k(0).sub(&k(1).add(&t.sq().rscale(&int(3))).mul(&c1.pow(4)))
        .add(&t.mul(&c1.sq()).mul(c2).rscale(&int(2)))
        .sub(&c2.sq().rscale(&int(3)))
        .add(&c1.mul(c3).rscale(&int(4)))
        .rscale(&rat(1, 12))
}

/// `H3(1)` directly in the Schwarz coefficients.
pub fn h3_of_c<T: Coeff>(c1: &T, c2: &T, c3: &T, c4: &T, t: &T) -> T {
    let k = |n: i64| c1.int(n);
    let t2 = t.sq();
    let t3 = t.pow(3);
    let lin = |a: i64, b: i64| k(a).add(&t.rscale(&int(b)));
    let quad = |a: i64, b: i64, c: i64| lin(a, b).add(&t2.rscale(&int(c)));
    let terms = [
        k(0).sub(&quad(1, -3, 9).add(&t3.rscale(&int(9))).mul(&c1.pow(6))),
        quad(3, -2, 21).mul(&c1.pow(4)).mul(c2),
        lin(-1, 2).mul(&c2.pow(3)).rscale(&int(9)),
        quad(2, -3, 9).mul(&c1.pow(3)).mul(c3).rscale(&int(4)),
        k(0).sub(&lin(-6, 7).mul(c1).mul(c2).mul(c3).rscale(&int(4))),
        k(0).sub(&c3.sq().rscale(&int(16))),
        c2.mul(c4).rscale(&int(18)),
        c1.sq().mul(
            &quad(-9, 3, -46)
                .mul(&c2.sq())
                .add(&lin(-1, 1).mul(c4).rscale(&int(18))),
        ),
    ];
    crate::ring::sum(c1, &terms).rscale(&rat(1, 144))
}

/// `12 H2(2)` after substituting the Schwarz parametrization, with `gb = conj(g)`.
pub fn h2_param_generic<T: Coeff>(c1: &T, g: &T, gb: &T, e: &T, t: &T) -> T {
    let k = |n: i64| c1.int(n);
    let s = k(1).sub(&c1.sq());
    let gg = k(1).sub(&g.mul(gb));
    k(0).sub(&k(1).add(&t.sq().rscale(&int(3))).mul(&c1.pow(4)))
        .add(&t.mul(g).mul(&c1.sq()).mul(&s).rscale(&int(2)))
        .add(&c1.mul(&e.mul(&gg).sub(&g.sq().mul(c1))).mul(&s).rscale(&int(4)))
        .sub(&g.sq().mul(&s.sq()).rscale(&int(3)))
}

pub fn h2_parametrized(sp: &SchwarzParams, t: &Rational) -> Result<GaussianRational> {
    sp.validate()?;
    let v = h2_param_generic(
        &real(sp.c1.clone()),
        &sp.gamma,
        &sp.gamma.conj(),
        &sp.eta,
        &real(t.clone()),
    );
    Ok(v.rscale(&rat(1, 12)))
}

/// The four parts of `144 H3(1) = A1 + B1 eta + C1 eta^2 + D1 rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct H3Parts<T = GaussianRational> {
    pub a1: T,
    pub b1: T,
    pub c1: T,
    pub d1: T,
}

pub fn h3_parts_generic<T: Coeff>(c1: &T, g: &T, gb: &T, e: &T, eb: &T, t: &T) -> H3Parts<T> {
    let k = |n: i64| c1.int(n);
    let t2 = t.sq();
    let lin = |a: i64, b: i64| k(a).add(&t.rscale(&int(b)));
    let quad = |a: i64, b: i64, c: i64| lin(a, b).add(&t2.rscale(&int(c)));
    let p2 = c1.sq();
    let p4 = c1.pow(4);
    let m = p2.sub(&k(1)); // -1 + c1^2
    let gm = g.mul(gb).sub(&k(1)); // -1 + |g|^2
    let em = e.mul(eb).sub(&k(1)); // -1 + |e|^2

    let x2 = k(-9)
        .add(&p2)
        .add(&t2.rscale(&int(2)).mul(&k(-23).add(&p2.rscale(&int(5)))))
        .add(&t.mul(&k(3).add(&p2.rscale(&int(9)))));
    let x3 = k(3)
        .add(&p2.rscale(&int(2)))
        .add(&p4)
        .rscale(&int(-3))
        .add(&t.rscale(&int(2)).mul(&k(9).sub(&p2.rscale(&int(4))).add(&p4.rscale(&int(4)))));
    let a1 = crate::ring::sum(
        c1,
        &[
            k(0).sub(&quad(1, -3, 9).add(&t.pow(3).rscale(&int(9))).mul(&c1.pow(6))),
            k(0).sub(&quad(3, -2, 21).mul(g).mul(&p4).mul(&m)),
            g.pow(4).mul(&p2).mul(&m.sq()).rscale(&int(2)),
            k(0).sub(&g.sq().mul(&p2).mul(&m).mul(&x2)),
            k(0).sub(&g.pow(3).mul(&m).mul(&x3)),
        ],
    );
    let b_inner = quad(2, -3, 9)
        .mul(&p2)
        .add(&g.sq().mul(&m))
        .add(&g.mul(&lin(6, -7).add(&p2.rscale(&int(3))).sub(&t.mul(&p2).rscale(&int(2)))));
    let b1 = gm.mul(c1).mul(&m).mul(&b_inner).rscale(&int(4));
    let c_inner = k(8)
        .sub(&p2.rscale(&int(8)))
        .add(&g.mul(gb).mul(&m).rscale(&int(8)))
        .add(&lin(-1, 1).mul(&p2).mul(gb).rscale(&int(9)))
        .sub(&g.mul(&m).mul(gb).rscale(&int(9)));
    let c1_part = gm.mul(&m).mul(&c_inner).rscale(&int(-2));
    let d_inner = g.add(&lin(-1, 1).mul(&p2)).sub(&g.mul(&p2));
    let d1 = gm.mul(&em).mul(&m).mul(&d_inner).rscale(&int(-18));
    H3Parts {
        a1,
        b1,
        c1: c1_part,
        d1,
    }
}

pub fn h3_parts(sp: &SchwarzParams, t: &Rational) -> Result<H3Parts> {
    sp.validate()?;
    Ok(h3_parts_generic(
        &real(sp.c1.clone()),
        &sp.gamma,
        &sp.gamma.conj(),
        &sp.eta,
        &sp.eta.conj(),
        &real(t.clone()),
    ))
}

/// `H3(1)` through the parametrized decomposition.
pub fn h3_parametrized(sp: &SchwarzParams, t: &Rational) -> Result<GaussianRational> {
    let parts = h3_parts(sp, t)?;
    let e = &sp.eta;
    let total = parts
        .a1
        .add(&parts.b1.mul(e))
        .add(&parts.c1.mul(&e.sq()))
        .add(&parts.d1.mul(&sp.rho));
    Ok(total.rscale(&rat(1, 144)))
}

/// `H2(2)` and `H3(1)` along the direct route: Schwarz parameters to `c_k`, then to `a_k`.
pub fn hankel_from_params(sp: &SchwarzParams, t: &Rational) -> Result<(GaussianRational, GaussianRational)> {
    let (c2, c3, c4) = crate::schwarz::schwarz_coeffs(sp)?;
    let c1 = real(sp.c1.clone());
    let tc = taylor_from_schwarz(&c1, &c2, &c3, &c4, &real(t.clone()));
    Ok(hankel_values(&tc))
}

/// The real data of the `12 H2(2) = A + B g + C g^2 + D (1 - |g|^2)` split,
/// normalized by `|D| = 4 c1 (1 - c1^2)` (taking `|eta| = 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbcDecomposition {
    #[serde(with = "crate::rational::as_string")]
    pub a_tilde: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub b_tilde: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub c_tilde: Rational,
    #[serde(with = "crate::rational::as_string")]
    pub d_mag: Rational,
}

/// Unnormalized `(A, B, C)` and the coefficient of `eta` in `D`.
pub fn h2_abc(c1: &Rational, t: &Rational) -> (Rational, Rational, Rational, Rational) {
    let p2 = c1 * c1;
    let p4 = &p2 * &p2;
    let a = -(int(1) + int(3) * t * t) * &p4;
    let b = int(2) * t * &p2 * (int(1) - &p2);
    let c = int(-3) + int(2) * &p2 + &p4;
    let d = int(4) * c1 * (int(1) - &p2);
    (a, b, c, d)
}

pub fn h2_abc_decomposition(c1: &Rational, t: &Rational) -> Result<AbcDecomposition> {
    if *c1 <= int(0) || *c1 >= int(1) {
        return Err(Error::InvalidParameter(format!(
            "c1 = {c1}: the endpoints c1 = 0 and c1 = 1 are separate cases"
        )));
    }
    let (a, b, c, d) = h2_abc(c1, t);
    Ok(AbcDecomposition {
        a_tilde: a / &d,
        b_tilde: b / &d,
        c_tilde: c / &d,
        d_mag: d,
    })
}
