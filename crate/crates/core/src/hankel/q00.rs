//! The hand argument for `R~ <= 16` on `Q00 = [0,1/8] x [0,1/8] x [0,1]`, where
//! the bound is attained at `p = x = 0` and Bernstein maxima alone cannot close it.
//!
//! Write `F = 16 - R~ = a0 + a1 x + a2 x^2 + a3 x^3 + a4 x^4`. Each coefficient is
//! bounded below by a chain of exact identities and certified one- or two-variable
//! inequalities, giving `F >= 30p^2 - 27px + 93/8 x^2 >= 0`.

use serde::{Deserialize, Serialize};

use crate::bernstein::{Region, SubProof, Verdict};
use crate::error::Result;
use crate::hankel::objectives::{build_bound_polys, Variant, RT_VARS};
use crate::hankel::report::{certify_ge, certify_le, BoundReport, SubResult};
use crate::parallel::Execution;
use crate::poly::MultiPoly;
use crate::rational::{int, rat, Rational};

pub const Q00_CHAIN: &str = "q00-chain";

const PU: [&str; 2] = ["p", "u"];

/// The variant-specific pieces of the chain. `a0`, `a2`, `a4` coincide for
/// both variants; `a1` and `a3` carry the bracket difference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainConstants {
    pub variant: Variant,
    /// `a1 = -p(1-p^2) B / 4`.
    pub b: &'static str,
    /// `a3 + 9 = u P + p Q`.
    pub p_poly: &'static str,
    pub p_floor: &'static str,
    pub q_poly: &'static str,
    pub q_floor: &'static str,
}

pub fn chain_constants(variant: Variant) -> ChainConstants {
    match variant {
        Variant::Printed => ChainConstants {
            variant,
            b: "96-40*u+72*p-36*p*u+32*p^2-16*p^2*u+12*p^3-4*p^3*u+21*p^3*u^2",
            p_poly: "9-10*p-22*p^2+6*p^3+17*p^4+4*p^5-4*p^6",
            p_floor: "9-10*p-22*p^2",
            q_poly: "24+21*p-16*p^2-15*p^3-8*p^4+3*p^5",
            q_floor: "24-16*p^2-15*p^3-8*p^4",
        },
        Variant::Derived => ChainConstants {
            variant,
            b: "96-56*u+72*p-36*p*u+48*p^2-16*p^2*u+12*p^3-4*p^3*u+21*p^3*u^2",
            p_poly: "9-14*p-22*p^2+10*p^3+17*p^4+4*p^5-4*p^6",
            p_floor: "9-14*p-22*p^2",
            q_poly: "24+21*p-12*p^2-15*p^3-12*p^4+3*p^5",
            q_floor: "24-12*p^2-15*p^3-12*p^4",
        },
    }
}

fn pu(src: &str) -> MultiPoly {
    MultiPoly::parse(&PU, src).expect("static chain polynomial parses")
}

fn p1(src: &str) -> MultiPoly {
    MultiPoly::parse(&["p"], src).expect("static chain polynomial parses")
}

fn u1(src: &str) -> MultiPoly {
    MultiPoly::parse(&["u"], src).expect("static chain polynomial parses")
}

pub fn q00_region() -> Region {
    Region::from_bounds(vec![(int(0), rat(1, 8)), (int(0), rat(1, 8)), (int(0), int(1))]).expect("valid region")
}

fn p_interval() -> Region {
    Region::from_bounds(vec![(int(0), rat(1, 8))]).expect("valid region")
}

fn pu_region() -> Region {
    Region::from_bounds(vec![(int(0), rat(1, 8)), (int(0), int(1))]).expect("valid region")
}

/// `(claim, lower bound, tangent point)` for a `u`-only coefficient bound on `[0,1]`.
struct UClaim {
    poly: &'static str,
    lower: Rational,
    cut: Option<Rational>,
}

fn u_claim(report: &mut BoundReport, tag: &str, c: &UClaim, exec: Execution) -> Result<bool> {
    let poly = u1(c.poly);
    let cuts: Vec<(usize, Vec<Rational>)> = c.cut.iter().map(|x| (0, vec![x.clone()])).collect();
    let cert = certify_ge(&poly, &c.lower, &Region::unit(1), false, &cuts, exec)?;
    let ok = cert.verdict == Verdict::Proved;
    Ok(report.push(
        SubResult::new(tag, format!("{} >= {} on u in [0,1]", c.poly, c.lower), ok).with_value(&c.lower),
    ))
}

fn push_cert(report: &mut BoundReport, tag: &str, detail: String, cert: &crate::bernstein::Certificate) -> bool {
    report.push(SubResult::new(tag, detail, cert.verdict == Verdict::Proved))
}

fn identity(report: &mut BoundReport, tag: &str, detail: &str, lhs: &MultiPoly, rhs: &MultiPoly) -> bool {
    report.push(SubResult::new(tag, format!("identity: {detail}"), (lhs - rhs).is_zero()))
}

/// Runs the whole chain for one objective variant.
pub fn q00_chain_verify(variant: Variant, exec: Execution) -> Result<BoundReport> {
    let k = chain_constants(variant);
    let set = build_bound_polys(variant)?;
    let f = MultiPoly::constant(&RT_VARS, int(16)) - &set.rtilde;
    let a: Vec<MultiPoly> = (0..=4).map(|i| f.coefficient_of("x", i)).collect::<Result<_>>()?;
    let mut r = BoundReport::new(&format!("R~ <= 16 on Q00 ({variant})"), int(16));
    let pr = MultiPoly::variable(&PU, "p")?;
    let ur = MultiPoly::variable(&PU, "u")?;

    r.push(SubResult::new(
        "F degree",
        "F = 16 - R~ has degree 4 in x",
        f.true_degrees()[1] <= 4,
    ));

    // a0 >= 30 p^2
    let c1 = pu("-64+48*u-72*u^2");
    let c3 = pu("64-48*u+72*u^2");
    let c4 = pu("-8+12*u-18*u^2-9*u^3");
    let big_a = pu("256") + &pr * &c1 - pu("128*p^2") + pr.pow(3) * &c3 + pr.pow(4) * &c4;
    identity(&mut r, "a0 form", "a0 = p^2 A(p,u) / 8", &a[0], &(pu("p^2/8") * &big_a));
    for (tag, c) in [
        ("a0 u-bound 1", UClaim { poly: "-64+48*u-72*u^2", lower: int(-88), cut: None }),
        ("a0 u-bound 2", UClaim { poly: "64-48*u+72*u^2", lower: int(56), cut: Some(rat(1, 3)) }),
        ("a0 u-bound 3", UClaim { poly: "-8+12*u-18*u^2-9*u^3", lower: int(-23), cut: None }),
    ] {
        u_claim(&mut r, tag, &c, exec)?;
    }
    let o_pu = pu("256-88*p-128*p^2+56*p^3-23*p^4");
    identity(
        &mut r,
        "A - O",
        "A - O = p(c1+88) + p^3(c3-56) + p^4(c4+23)",
        &(&big_a - &o_pu),
        &(&pr * (&c1 + pu("88")) + pr.pow(3) * (&c3 - pu("56")) + pr.pow(4) * (&c4 + pu("23"))),
    );
    let o = p1("256-88*p-128*p^2+56*p^3-23*p^4");
    let o_prime = o.derivative("p")?;
    identity(&mut r, "O'", "O' = -88-256p+168p^2-92p^3", &o_prime, &p1("-88-256*p+168*p^2-92*p^3"));
    let cert = certify_le(&o_prime, &int(0), &p_interval(), true, &[], exec)?;
    push_cert(&mut r, "O decreasing", "O'(p) < 0 on [0,1/8]".into(), &cert);
    let o_end = o.eval(&[rat(1, 8)])?;
    r.push(SubResult::new("O(1/8)", "O(1/8) > 240", o_end > int(240)).with_value(&o_end));
    r.push(SubResult::new(
        "a0 >= 30p^2",
        "a0 = p^2 A / 8 >= p^2 O(1/8) / 8 >= 30 p^2",
        o_end >= int(240),
    ));

    // a1 >= -27 p
    let b = pu(k.b);
    identity(&mut r, "a1 form", "a1 = -p(1-p^2) B(p,u) / 4", &a[1], &(pu("-p*(1-p^2)/4") * &b));
    let cert = certify_le(&b, &int(108), &pu_region(), true, &[], exec)?;
    push_cert(&mut r, "B < 108", format!("B = {} < 108 on [0,1/8] x [0,1]", k.b), &cert);

    // a2 >= 51/4
    let a2_claims = [
        ("a2 u-bound 1", UClaim { poly: "3/2*u-23/2*u^2", lower: rat(-23, 2), cut: None }),
        ("a2 u-bound 2", UClaim { poly: "16-6*u+9*u^2", lower: int(15), cut: Some(rat(1, 3)) }),
        ("a2 u-bound 3", UClaim { poly: "24+3*u+14*u^2", lower: int(24), cut: None }),
        ("a2 u-bound 4", UClaim { poly: "-12+6*u-9*u^2", lower: int(-15), cut: None }),
        ("a2 u-bound 5", UClaim { poly: "-1-9/2*u-5/2*u^2", lower: int(-8), cut: None }),
    ];
    let mut a2_form = pu("14-4*p-37*p^2");
    let mut a2_gap = pu("0");
    for (i, (tag, c)) in a2_claims.iter().enumerate() {
        u_claim(&mut r, tag, c, exec)?;
        let e = pu(c.poly);
        let pk = pr.pow(i as u32 + 2);
        a2_gap = a2_gap + &pk * (&e - MultiPoly::constant(&PU, c.lower.clone()));
        a2_form = a2_form + pk * e;
    }
    identity(&mut r, "a2 form", "a2 = 14-4p-37p^2 + sum of e_k(u) p^k", &a[2], &a2_form);
    let l_pu = pu("14-4*p-97/2*p^2+15*p^3+24*p^4-15*p^5-8*p^6");
    identity(&mut r, "a2 - L", "a2 - L = sum of (e_k - lower_k) p^k", &(&a[2] - &l_pu), &a2_gap);
    let l = p1("14-4*p-97/2*p^2+15*p^3+24*p^4-15*p^5-8*p^6");
    let l_prime = l.derivative("p")?;
    identity(
        &mut r,
        "L'",
        "L' = -4-97p+45p^2+96p^3-75p^4-48p^5",
        &l_prime,
        &p1("-4-97*p+45*p^2+96*p^3-75*p^4-48*p^5"),
    );
    let cert = certify_le(&l_prime, &int(0), &p_interval(), true, &[], exec)?;
    push_cert(&mut r, "L decreasing", "L'(p) < 0 on [0,1/8]".into(), &cert);
    let l_end = l.eval(&[rat(1, 8)])?;
    r.push(SubResult::new("L(1/8)", "L(1/8) > 51/4", l_end > rat(51, 4)).with_value(&l_end));

    // a3 >= -9
    let pp = p1(k.p_poly).extend_vars(&PU)?;
    let qq = p1(k.q_poly).extend_vars(&PU)?;
    identity(&mut r, "a3 form", "a3 + 9 = u P(p) + p Q(p)", &(&a[3] + pu("9")), &(&ur * &pp + &pr * &qq));
    let (pf, qf) = (p1(k.p_floor), p1(k.q_floor));
    let cert = certify_ge(&(p1(k.p_poly) - &pf), &int(0), &p_interval(), false, &[], exec)?;
    push_cert(&mut r, "P >= floor", format!("P >= {} on [0,1/8]", k.p_floor), &cert);
    let pf_end = pf.eval(&[rat(1, 8)])?;
    let cert = certify_ge(&pf, &pf_end, &p_interval(), false, &[], exec)?;
    let ok = cert.verdict == Verdict::Proved && pf_end > int(0);
    r.push(SubResult::new("P floor", format!("{} >= value at 1/8 > 0", k.p_floor), ok).with_value(&pf_end));
    let cert = certify_ge(&(p1(k.q_poly) - &qf), &int(0), &p_interval(), false, &[], exec)?;
    push_cert(&mut r, "Q >= floor", format!("Q >= {} on [0,1/8]", k.q_floor), &cert);
    let cert = certify_ge(&qf, &int(0), &p_interval(), true, &[], exec)?;
    push_cert(&mut r, "Q floor", format!("{} > 0 on [0,1/8]", k.q_floor), &cert);

    // a4 >= 2
    identity(
        &mut r,
        "a4 form",
        "a4 = 2 + 2p(2-3p-4p^2) + (6p^4+4p^5-2p^6), free of u",
        &a[4],
        &pu("2 + 2*p*(2-3*p-4*p^2) + 6*p^4+4*p^5-2*p^6"),
    );
    let cert = certify_ge(&p1("2-3*p-4*p^2"), &int(0), &p_interval(), false, &[], exec)?;
    push_cert(&mut r, "a4 bracket", "2-3p-4p^2 >= 0 on [0,1/8]".into(), &cert);
    let cert = certify_ge(&p1("6*p^4+4*p^5-2*p^6"), &int(0), &p_interval(), false, &[], exec)?;
    push_cert(&mut r, "a4 tail", "6p^4+4p^5-2p^6 >= 0 on [0,1/8]".into(), &cert);

    // -9x^3 >= -9/8 x^2 on [0,1/8]
    let cert = certify_ge(&MultiPoly::parse(&["x"], "9/8*x^2-9*x^3")?, &int(0), &p_interval(), false, &[], exec)?;
    push_cert(&mut r, "x^3 absorption", "9/8 x^2 - 9x^3 >= 0 on [0,1/8]".into(), &cert);

    // V(p,x) = 30p^2 - 27px + 93/8 x^2 >= 0
    let xs = ["x"];
    let (v2, v1, v0) = (
        MultiPoly::parse(&xs, "30")?,
        MultiPoly::parse(&xs, "-27*x")?,
        MultiPoly::parse(&xs, "93/8*x^2")?,
    );
    let disc = &v1 * &v1 - MultiPoly::constant(&xs, int(4)) * &v2 * &v0;
    let expected = MultiPoly::parse(&xs, "-666*x^2")?;
    let disc_coeff = disc.coeff(&[2]);
    r.push(
        SubResult::new(
            "V discriminant",
            "discriminant of V in p is -666 x^2 with leading coefficient 30 > 0",
            disc == expected && v2.coeff(&[0]) > int(0),
        )
        .with_value(&disc_coeff),
    );
    Ok(r.finish())
}

/// Discharges `R~ <= 16` on boxes inside `Q00` for either objective variant.
pub struct Q00Chain {
    derived: MultiPoly,
    printed: MultiPoly,
    exec: Execution,
}

impl Q00Chain {
    pub fn new(exec: Execution) -> Result<Self> {
        Ok(Q00Chain {
            derived: build_bound_polys(Variant::Derived)?.rtilde,
            printed: build_bound_polys(Variant::Printed)?.rtilde,
            exec,
        })
    }

    pub fn variant_of(&self, objective: &MultiPoly) -> Option<Variant> {
        if objective.vars() != self.derived.vars() {
            return None;
        }
        if objective == &self.derived {
            Some(Variant::Derived)
        } else if objective == &self.printed {
            Some(Variant::Printed)
        } else {
            None
        }
    }
}

impl SubProof for Q00Chain {
    fn name(&self) -> &str {
        Q00_CHAIN
    }

    fn applies(&self, objective: &MultiPoly, region: &Region, bound: &Rational, strict: bool) -> bool {
        !strict && *bound >= int(16) && q00_region().contains(region) && self.variant_of(objective).is_some()
    }

    fn verify(&self) -> Result<bool> {
        for v in [Variant::Derived, Variant::Printed] {
            if !q00_chain_verify(v, self.exec)?.is_proved() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value_of(r: &BoundReport, name: &str) -> Option<String> {
        r.cases.iter().find(|c| c.name == name).and_then(|c| c.value.clone())
    }

    #[test]
    fn printed_chain_reproduces_constants() {
        let r = q00_chain_verify(Variant::Printed, Execution::Sequential).unwrap();
        if let Some(f) = r.first_failure() {
            panic!("{}: {}", f.name, f.detail);
        }
        assert_eq!(value_of(&r, "O(1/8)").unwrap(), "995753/4096");
        assert_eq!(value_of(&r, "L(1/8)").unwrap(), "26167/2048");
        assert_eq!(value_of(&r, "P floor").unwrap(), "237/32");
        assert_eq!(value_of(&r, "V discriminant").unwrap(), "-666");
    }

    #[test]
    fn derived_chain_holds() {
        let r = q00_chain_verify(Variant::Derived, Execution::Sequential).unwrap();
        if let Some(f) = r.first_failure() {
            panic!("{}: {}", f.name, f.detail);
        }
        assert_eq!(value_of(&r, "P floor").unwrap(), "221/32");
    }

    #[test]
    fn applies_only_inside_q00() {
        let chain = Q00Chain::new(Execution::Sequential).unwrap();
        let obj = build_bound_polys(Variant::Printed).unwrap().rtilde;
        assert!(chain.applies(&obj, &q00_region(), &int(16), false));
        assert!(!chain.applies(&obj, &q00_region(), &int(16), true));
        assert!(!chain.applies(&obj, &q00_region(), &int(15), false));
        assert!(!chain.applies(&obj, &Region::unit(3), &int(16), false));
        let other = &obj + MultiPoly::constant(&RT_VARS, int(1));
        assert!(!chain.applies(&other, &q00_region(), &int(16), false));
    }
}
