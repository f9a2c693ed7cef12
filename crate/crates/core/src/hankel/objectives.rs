//! The polynomial majorants of `144 |H3(1)|` and their reductions.
//!
//! The derived objectives are built from the formal coefficient expansion:
//! every piece of `A1 + B1 eta + C1 eta^2 + D1 rho` is a real polynomial in
//! `(p, t)` times a monomial in `gamma`, `conj(gamma)` and `1 - |gamma|^2`, so
//! the triangle inequality bounds it by `|coef| x^(a+b) (1 - x^2)^m`. The
//! printed objectives are transcriptions of the displayed expansions, kept
//! for table reproduction and for comparison with the derived ones.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bernstein::{certify_upper_bound, Certificate, Policy, Region, SubProofRegistry, Verdict};
use crate::error::{Error, Result};
use crate::hankel::coeffs::h3_of_c;
use crate::parallel::Execution;
use crate::poly::{MultiPoly, PolyRing};
use crate::rational::{int, rat};
use crate::ring::Coeff;
use crate::schwarz::schwarz_coeffs_generic;

pub const H_VARS: [&str; 4] = ["p", "x", "y", "t"];
pub const R_VARS: [&str; 3] = ["p", "x", "t"];
pub const RT_VARS: [&str; 3] = ["p", "x", "u"];
pub const COEF_VARS: [&str; 2] = ["p", "t"];
pub const FORMAL_VARS: [&str; 7] = ["p", "t", "g", "gb", "e", "eb", "r"];

/// Depth limit for the sign certificates of majorant pieces.
pub const SIGN_DEPTH: usize = 12;

const PRINTED_H: &str = "(1-3*t+9*t^2+9*t^3)*p^6 + x*((3-2*t+21*t^2)*p^4*(1-p^2)) \
    + x^2*(p^2*(1-p^2)*(9-p^2+2*t^2*(23-5*p^2)-t*(3+9*p^2))) \
    + x^3*(3*(3+2*p^2+p^4)+2*t*(-9+4*p^2-4*p^4)) + x^4*(2*p^2*(1-p^2)^2) \
    + y*(4*(1-x^2)*p*(1-p^2)*((2-3*t+9*t^2)*p^2+x^2*(1-p^2)+x*(6-7*t+3*p^2-2*t*p^2))) \
    + y^2*(2*(1-x^2)*(1-p^2)*(8*(1-x^2)*(1-p^2)+9*(x*(1-p^2)+(1-t)*p^2)*x)) \
    + 18*(1-x^2)*(1-y^2)*(1-p^2)*(x*(1-p^2)+(1-t)*p^2)";

const PRINTED_H1: &str = "(1-3*t+9*t^2+9*t^3)*p^6 + x*((3-2*t+21*t^2)*p^4*(1-p^2)) \
    + x^2*(p^2*(1-p^2)*(9-p^2+2*t^2*(23-5*p^2)-t*(3+9*p^2))) \
    + x^3*(3*(3+2*p^2+p^4)+2*t*(-9+4*p^2-4*p^4)) + x^4*(2*p^2*(1-p^2)^2) \
    + 4*(1-x^2)*p*(1-p^2)*((2-3*t+9*t^2)*p^2+x^2*(1-p^2)+x*(6-7*t+3*p^2-2*t*p^2)) \
    + y^2*(2*(1-x^2)*(1-p^2)*(8*(1-x^2)*(1-p^2)+9*(x*(1-p^2)+(1-t)*p^2)*x)) \
    + 18*(1-x^2)*(1-y^2)*(1-p^2)*(x*(1-p^2)+(1-t)*p^2)";

const PRINTED_R1: &str = "p^6*(1-3*t+9*t^2+9*t^3) + p^4*(1-p^2)*(3-2*t+21*t^2)*x \
    + p^2*(1-p^2)*(9-p^2-(3+9*p^2)*t+2*(23-5*p^2)*t^2)*x^2 \
    + (1-p^2)*(3*(3+2*p^2+p^4)-2*(9-4*p^2+4*p^4)*t)*x^3 \
    + 2*p^2*(-1+p^2)^2*x^4 + 4*p*(1-p^2)*(1-x^2)*(p^2*(2-3*t+9*t^2)+(6*(1-t)+2*p^2*(1-t)+t)*x+(1-p^2)*x^2) \
    + 2*(1-p^2)*(1-x^2)*(9*x*(p^2*(1-t)+(1-p^2)*x)+8*(1-p^2)*(1-x^2))";

const PRINTED_R2_TILDE: &str = "9/8*p^6*u^3+5/2*p^6*u^2*x^2-21/4*p^6*u^2*x+9/4*p^6*u^2+4*p^6*u*x^3\
    +9/2*p^6*u*x^2+p^6*u*x-3/2*p^6*u+2*p^6*x^4-3*p^6*x^3+p^6*x^2-3*p^6*x+p^6+9*p^5*u^2*x^2\
    -9*p^5*u^2-4*p^5*u*x^3-6*p^5*u*x^2+4*p^5*u*x+6*p^5*u-4*p^5*x^4+8*p^5*x^3+12*p^5*x^2\
    -8*p^5*x-8*p^5-14*p^4*u^2*x^2+21/4*p^4*u^2*x-8*p^4*u*x^3-12*p^4*u*x^2-p^4*u*x+9*p^4*u\
    -4*p^4*x^4-21*p^4*x^3+8*p^4*x^2+21*p^4*x-18*p^4-9*p^3*u^2*x^2+9*p^3*u^2-6*p^3*u*x^3\
    +6*p^3*u*x^2+6*p^3*u*x-6*p^3*u+8*p^3*x^4+16*p^3*x^3-16*p^3*x^2-16*p^3*x+8*p^3\
    +23/2*p^2*u^2*x^2+13*p^2*u*x^3+15/2*p^2*u*x^2-9*p^2*u+2*p^2*x^4+33*p^2*x^3-9*p^2*x^2\
    -36*p^2*x+18*p^2+10*p*u*x^3-10*p*u*x-4*p*x^4-24*p*x^3+4*p*x^2+24*p*x-9*u*x^3-9*x^3+18*x";

/// How the `eta`/`rho` factor of a group is bounded, with `|eta| = y`, `|rho| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EtaFactor {
    /// `1`.
    One,
    /// `eta`, bounded by `y`.
    Eta,
    /// `eta^2`, bounded by `y^2`.
    EtaSq,
    /// `rho (1 - |eta|^2)`, bounded by `1 - y^2`.
    RhoDefect,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sign {
    NonNegative,
    NonPositive,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::NonNegative => ">= 0",
            Sign::NonPositive => "<= 0",
        })
    }
}

/// `coef(p, t) gamma^a conj(gamma)^b (1 - |gamma|^2)^m`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajorantPiece {
    pub label: String,
    pub coef: MultiPoly,
    pub gamma_pow: u32,
    pub conj_pow: u32,
    pub defect_pow: u32,
    /// Sign of `coef` on `[0,1] x [0,1/2]`, checked by [`verify_majorant`].
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajorantGroup {
    pub name: String,
    pub eta: EtaFactor,
    pub pieces: Vec<MajorantPiece>,
}

fn coef(src: &str) -> MultiPoly {
    MultiPoly::parse(&COEF_VARS, src).expect("static coefficient parses")
}

fn piece(label: &str, src: &str, a: u32, b: u32, m: u32, sign: Sign) -> MajorantPiece {
    MajorantPiece {
        label: label.to_string(),
        coef: coef(src),
        gamma_pow: a,
        conj_pow: b,
        defect_pow: m,
        sign,
    }
}

/// The four groups `A1`, `B1 eta`, `C1 eta^2`, `D1 rho` split into pieces with
/// a fixed sign.
pub fn majorant_groups() -> Vec<MajorantGroup> {
    use Sign::*;
    vec![
        MajorantGroup {
            name: "A1".into(),
            eta: EtaFactor::One,
            pieces: vec![
                piece("A1 g^0", "-(1-3*t+9*t^2+9*t^3)*p^6", 0, 0, 0, NonPositive),
                piece("A1 g^1", "(3-2*t+21*t^2)*p^4*(1-p^2)", 1, 0, 0, NonNegative),
                piece(
                    "A1 g^2",
                    "p^2*(1-p^2)*(-9+p^2+2*t^2*(-23+5*p^2)+t*(3+9*p^2))",
                    2,
                    0,
                    0,
                    NonPositive,
                ),
                piece(
                    "A1 g^3",
                    "(1-p^2)*(-3*(3+2*p^2+p^4)+2*t*(9-4*p^2+4*p^4))",
                    3,
                    0,
                    0,
                    NonPositive,
                ),
                piece("A1 g^4", "2*p^2*(1-p^2)^2", 4, 0, 0, NonNegative),
            ],
        },
        MajorantGroup {
            name: "B1".into(),
            eta: EtaFactor::Eta,
            pieces: vec![
                piece("B1 g^0", "4*p*(1-p^2)*(2-3*t+9*t^2)*p^2", 0, 0, 1, NonNegative),
                piece("B1 g^1", "4*p*(1-p^2)*(6-7*t+3*p^2-2*t*p^2)", 1, 0, 1, NonNegative),
                piece("B1 g^2", "-4*p*(1-p^2)^2", 2, 0, 1, NonPositive),
            ],
        },
        MajorantGroup {
            name: "C1".into(),
            eta: EtaFactor::EtaSq,
            pieces: vec![
                piece("C1 defect", "-16*(1-p^2)^2", 0, 0, 2, NonPositive),
                piece("C1 |g|^2", "-18*(1-p^2)^2", 1, 1, 1, NonPositive),
                piece("C1 conj(g)", "18*(1-t)*p^2*(1-p^2)", 0, 1, 1, NonNegative),
            ],
        },
        MajorantGroup {
            name: "D1".into(),
            eta: EtaFactor::RhoDefect,
            pieces: vec![
                piece("D1 g", "18*(1-p^2)^2", 1, 0, 1, NonNegative),
                piece("D1 g^0", "-18*(1-t)*p^2*(1-p^2)", 0, 0, 1, NonPositive),
            ],
        },
    ]
}

fn formal_ring() -> PolyRing {
    PolyRing::new(&FORMAL_VARS)
}

/// The group as an exact polynomial in `p, t, gamma, conj(gamma), eta, conj(eta), rho`.
pub fn formal_group(group: &MajorantGroup) -> Result<MultiPoly> {
    let f = formal_ring();
    let (g, gb, e, eb, r) = (f.var("g"), f.var("gb"), f.var("e"), f.var("eb"), f.var("r"));
    let defect = f.int(1) - &g * &gb;
    let mut total = f.int(0);
    for pc in &group.pieces {
        let c = pc.coef.extend_vars(&FORMAL_VARS)?;
        total = total + c * g.pow(pc.gamma_pow) * gb.pow(pc.conj_pow) * defect.pow(pc.defect_pow);
    }
    let eta = match group.eta {
        EtaFactor::One => f.int(1),
        EtaFactor::Eta => e,
        EtaFactor::EtaSq => &e * &e,
        EtaFactor::RhoDefect => r * (f.int(1) - &e * &eb),
    };
    Ok(total * eta)
}

/// `144 H3(1)` with the coefficient parametrization substituted, over `FORMAL_VARS`.
pub fn formal_h3() -> MultiPoly {
    let f = formal_ring();
    let (p, t) = (f.var("p"), f.var("t"));
    let (g, gb, e, eb, r) = (f.var("g"), f.var("gb"), f.var("e"), f.var("eb"), f.var("r"));
    let (c2, c3, c4) = schwarz_coeffs_generic(&p, &g, &gb, &e, &eb, &r);
    h3_of_c(&p, &c2, &c3, &c4, &t).rscale(&int(144))
}

fn abs_coef(pc: &MajorantPiece) -> MultiPoly {
    match pc.sign {
        Sign::NonNegative => pc.coef.clone(),
        Sign::NonPositive => -pc.coef.clone(),
    }
}

/// `|coef| x^(a+b) (1-x^2)^m` times the bound of the eta factor, over `H_VARS`.
pub fn majorant_of(group: &MajorantGroup) -> Result<MultiPoly> {
    let h = PolyRing::new(&H_VARS);
    let (x, y) = (h.var("x"), h.var("y"));
    let one = h.int(1);
    let mut total = h.int(0);
    for pc in &group.pieces {
        let c = abs_coef(pc).extend_vars(&H_VARS)?;
        let defect = &one - &x * &x;
        total = total + c * x.pow(pc.gamma_pow + pc.conj_pow) * defect.pow(pc.defect_pow);
    }
    let yf = match group.eta {
        EtaFactor::One => one,
        EtaFactor::Eta => y,
        EtaFactor::EtaSq => &y * &y,
        EtaFactor::RhoDefect => one - &y * &y,
    };
    Ok(total * yf)
}

/// The derived majorant `H(p, x, y, t) >= 144 |H3(1)|`.
pub fn derived_h() -> MultiPoly {
    let h = PolyRing::new(&H_VARS);
    majorant_groups()
        .iter()
        .map(|g| majorant_of(g).expect("static groups are well formed"))
        .fold(h.int(0), |acc, m| acc + m)
}

/// The region `p in [0,1], t in [0,1/2]` over `COEF_VARS`.
pub fn coef_region() -> Region {
    Region::from_bounds(vec![(int(0), int(1)), (int(0), rat(1, 2))]).expect("valid region")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PieceSignCheck {
    pub label: String,
    pub sign: Sign,
    pub verdict: Verdict,
    pub nodes: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MajorantReport {
    /// `sum of formal groups == 144 H3(1)` as polynomials.
    pub identity_holds: bool,
    pub signs: Vec<PieceSignCheck>,
    pub verdict: Verdict,
}

/// Certifies `coef` has the claimed sign on `[0,1] x [0,1/2]`.
pub fn certify_sign(coef: &MultiPoly, sign: Sign, exec: Execution) -> Result<Certificate> {
    let target = match sign {
        Sign::NonNegative => -coef.clone(),
        Sign::NonPositive => coef.clone(),
    };
    let policy = Policy::adaptive(SIGN_DEPTH).with_exec(exec);
    certify_upper_bound(&target, &coef_region(), &int(0), &policy, &SubProofRegistry::new())
}

/// Checks the formal identity and every piece sign behind [`derived_h`].
pub fn verify_majorant(exec: Execution) -> Result<MajorantReport> {
    let groups = majorant_groups();
    let mut sum = formal_ring().int(0);
    for g in &groups {
        sum = sum + formal_group(g)?;
    }
    let identity_holds = (sum - formal_h3()).is_zero();
    let mut signs = Vec::new();
    for g in &groups {
        for pc in &g.pieces {
            let cert = certify_sign(&pc.coef, pc.sign, exec)?;
            signs.push(PieceSignCheck {
                label: pc.label.clone(),
                sign: pc.sign,
                verdict: cert.verdict,
                nodes: cert.nodes.len(),
            });
        }
    }
    let all = identity_holds && signs.iter().all(|s| s.verdict == Verdict::Proved);
    Ok(MajorantReport {
        identity_holds,
        signs,
        verdict: if all { Verdict::Proved } else { Verdict::Failed },
    })
}

/// Moves the `y`-linear part of `h` to `y^0`. Errors if `h` has degree above 2 in `y`.
pub fn h1_from_h(h: &MultiPoly) -> Result<MultiPoly> {
    let k = h.var_index("y")?;
    if h.true_degrees()[k] > 2 {
        return Err(Error::InvalidParameter("expected a quadratic in y".into()));
    }
    let vars: Vec<String> = h.vars().to_vec();
    let y = MultiPoly::variable(&vars, "y")?;
    let c0 = h.partial_eval("y", &int(0))?.extend_vars(&vars)?;
    let c1 = h.coefficient_of("y", 1)?.extend_vars(&vars)?;
    let c2 = h.coefficient_of("y", 2)?.extend_vars(&vars)?;
    Ok(c0 + c1 + &y * &y * c2)
}

/// The coefficient of `y` in `h`, over the remaining variables.
pub fn y_linear_coefficient(h: &MultiPoly) -> Result<MultiPoly> {
    h.coefficient_of("y", 1)
}

/// `t = u/2`, renaming the variable.
pub fn to_u(r: &MultiPoly) -> Result<MultiPoly> {
    r.substitute_affine("t", &rat(1, 2), &int(0))?.rename_var("t", "u")
}

/// `u = 2t`, renaming the variable.
pub fn to_t(r: &MultiPoly) -> Result<MultiPoly> {
    r.substitute_affine("u", &int(2), &int(0))?.rename_var("u", "t")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Built from the coefficient expansion by the triangle inequality.
    Derived,
    /// Transcribed from the displayed expansions.
    Printed,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Derived => "derived",
            Variant::Printed => "printed",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "derived" => Ok(Variant::Derived),
            "printed" => Ok(Variant::Printed),
            _ => Err(Error::InvalidParameter(format!("unknown variant {s:?}"))),
        }
    }
}

/// `H, H1` over `(p,x,y,t)`, `R1, R2` over `(p,x,t)`, `R~, R~2` over `(p,x,u)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveSet {
    pub variant: Variant,
    pub h: MultiPoly,
    pub h1: MultiPoly,
    pub r1: MultiPoly,
    pub r2: MultiPoly,
    pub rtilde: MultiPoly,
    pub r2tilde: MultiPoly,
}

impl ObjectiveSet {
    pub fn get(&self, name: &str) -> Result<&MultiPoly> {
        Ok(match name {
            "h" => &self.h,
            "h1" => &self.h1,
            "r1" => &self.r1,
            "r2" => &self.r2,
            "rtilde" => &self.rtilde,
            "r2tilde" => &self.r2tilde,
            _ => return Err(Error::InvalidParameter(format!("unknown objective {name:?}"))),
        })
    }

    pub const NAMES: [&'static str; 6] = ["h", "h1", "r1", "r2", "rtilde", "r2tilde"];
}

pub fn printed_h() -> MultiPoly {
    MultiPoly::parse(&H_VARS, PRINTED_H).expect("static display parses")
}

pub fn printed_h1() -> MultiPoly {
    MultiPoly::parse(&H_VARS, PRINTED_H1).expect("static display parses")
}

pub fn printed_r1() -> MultiPoly {
    MultiPoly::parse(&R_VARS, PRINTED_R1).expect("static display parses")
}

pub fn printed_r2tilde() -> MultiPoly {
    MultiPoly::parse(&RT_VARS, PRINTED_R2_TILDE).expect("static display parses")
}

pub fn build_bound_polys(variant: Variant) -> Result<ObjectiveSet> {
    match variant {
        Variant::Derived => {
            let h = derived_h();
            let h1 = h1_from_h(&h)?;
            let r1 = h1.partial_eval("y", &int(1))?;
            let r2 = h1.partial_eval("y", &int(0))?;
            Ok(ObjectiveSet {
                variant,
                rtilde: to_u(&r1)?,
                r2tilde: to_u(&r2)?,
                h,
                h1,
                r1,
                r2,
            })
        }
        Variant::Printed => {
            let r1 = printed_r1();
            let r2tilde = printed_r2tilde();
            Ok(ObjectiveSet {
                variant,
                h: printed_h(),
                h1: printed_h1(),
                rtilde: to_u(&r1)?,
                r2: to_t(&r2tilde)?,
                r1,
                r2tilde,
            })
        }
    }
}

/// `4 p x (1-p^2)(1-x^2)(p^2-u)`: derived minus printed, for both `R~` and `R~2`.
pub fn bracket_gap() -> MultiPoly {
    MultiPoly::parse(&RT_VARS, "4*p*x*(1-p^2)*(1-x^2)*(p^2-u)").expect("static")
}

/// `p^2 K x^3` with `K = 3(3+2p^2+p^4)+2t(-9+4p^2-4p^4)`: printed `H` minus derived `H`.
pub fn x3_gap() -> MultiPoly {
    MultiPoly::parse(&H_VARS, "p^2*x^3*(3*(3+2*p^2+p^4)+2*t*(-9+4*p^2-4*p^4))").expect("static")
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConsistencyReport {
    /// `derived R~ - printed R~ == bracket_gap`.
    pub rtilde_gap_matches: bool,
    /// `derived R~2 - printed R~2 == bracket_gap`.
    pub r2tilde_gap_matches: bool,
    /// `printed H - derived H == x3_gap`.
    pub h_gap_matches: bool,
    /// The displayed `H1` is the displayed `H` with the `y`-linear part moved to `y^0`.
    pub printed_h1_consistent: bool,
    /// Derived `H1` has no `y`-linear term.
    pub h1_has_no_linear_y: bool,
    /// `R1(0, 0, t) == 16` for both variants.
    pub r1_at_origin_is_16: bool,
}

pub fn consistency(derived: &ObjectiveSet, printed: &ObjectiveSet) -> Result<ConsistencyReport> {
    let gap = bracket_gap();
    let origin = |r: &MultiPoly| -> Result<bool> {
        let at = r.partial_eval("p", &int(0))?.partial_eval("x", &int(0))?;
        Ok((at - MultiPoly::constant(&["t"], int(16))).is_zero())
    };
    Ok(ConsistencyReport {
        rtilde_gap_matches: (&derived.rtilde - &printed.rtilde - &gap).is_zero(),
        r2tilde_gap_matches: (&derived.r2tilde - &printed.r2tilde - &gap).is_zero(),
        h_gap_matches: (&printed.h - &derived.h - x3_gap()).is_zero(),
        printed_h1_consistent: h1_from_h(&printed.h)? == printed.h1,
        h1_has_no_linear_y: derived.h1.coefficient_of("y", 1)?.is_zero(),
        r1_at_origin_is_16: origin(&derived.r1)? && origin(&printed.r1)?,
    })
}

/// Certifies the `y`-linear coefficient of `h` is nonnegative on
/// `[0,1] x [0,1] x [0,1/2]`.
pub fn certify_y_linear_nonnegative(h: &MultiPoly, exec: Execution) -> Result<Certificate> {
    let c = y_linear_coefficient(h)?;
    let region = Region::from_bounds(vec![(int(0), int(1)), (int(0), int(1)), (int(0), rat(1, 2))])?;
    let policy = Policy::adaptive(SIGN_DEPTH).with_exec(exec);
    certify_upper_bound(&-c, &region, &int(0), &policy, &SubProofRegistry::new())
}
