//! Dense multivariate polynomials over the rationals.
//!
//! A [`MultiPoly`] carries its variable list explicitly and stores every
//! coefficient of the box `0..=degree_bounds[i]` in row-major order (the last
//! variable varies fastest). Binary operations require identical variable
//! lists; reordering is always an explicit call ([`MultiPoly::extend_vars`]).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::binomial::Binomials;
use crate::error::{Error, Result};
use crate::rational::{parse_rational, Rational, RationalRepr};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "PolyJson", into = "PolyJson")]
pub struct MultiPoly {
    vars: Vec<String>,
    degrees: Vec<usize>,
    coeffs: Vec<Rational>,
}

/// Result of [`MultiPoly::affine_substitute`]. `collapsed` is set when the
/// scale was zero, i.e. the substituted variable no longer occurs.
#[derive(Debug, Clone)]
pub struct AffineSubstitution {
    pub poly: MultiPoly,
    pub collapsed: bool,
}

fn shape_len(degrees: &[usize]) -> usize {
    degrees.iter().map(|d| d + 1).product()
}

fn strides(degrees: &[usize]) -> Vec<usize> {
    let mut s = vec![1; degrees.len()];
    for k in (0..degrees.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * (degrees[k + 1] + 1);
    }
    s
}

fn decode(mut lin: usize, degrees: &[usize]) -> Vec<usize> {
    let mut exps = vec![0; degrees.len()];
    for k in (0..degrees.len()).rev() {
        exps[k] = lin % (degrees[k] + 1);
        lin /= degrees[k] + 1;
    }
    exps
}

impl MultiPoly {
    /// The zero polynomial with the given shape.
    pub fn with_shape(vars: Vec<String>, degrees: Vec<usize>) -> Self {
        assert_eq!(vars.len(), degrees.len(), "one degree bound per variable");
        let n = shape_len(&degrees);
        MultiPoly {
            vars,
            degrees,
            coeffs: vec![Rational::zero(); n],
        }
    }

    pub fn zero<S: AsRef<str>>(vars: &[S]) -> Self {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let n = vars.len();
        Self::with_shape(vars, vec![0; n])
    }

    pub fn constant<S: AsRef<str>>(vars: &[S], c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.coeffs[0] = c;
        p
    }

    pub fn variable<S: AsRef<str>>(vars: &[S], name: &str) -> Result<Self> {
        let mut p = Self::zero(vars);
        let k = p.var_index(name)?;
        p.degrees[k] = 1;
        p.coeffs = vec![Rational::zero(); 2];
        p.coeffs[1] = Rational::one();
        Ok(p)
    }

    /// Sums the given `(exponents, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<S, I>(vars: &[S], terms: I) -> Result<Self>
    where
        S: AsRef<str>,
        I: IntoIterator<Item = (Vec<usize>, Rational)>,
    {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let terms: Vec<_> = terms.into_iter().collect();
        let mut degrees = vec![0; vars.len()];
        for (e, _) in &terms {
            if e.len() != vars.len() {
                return Err(Error::Arity {
                    expected: vars.len(),
                    got: e.len(),
                });
            }
            for (d, &x) in degrees.iter_mut().zip(e) {
                *d = (*d).max(x);
            }
        }
        let mut p = Self::with_shape(vars, degrees);
        for (e, c) in terms {
            let i = p.offset(&e);
            p.coeffs[i] += c;
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn degree_bounds(&self) -> &[usize] {
        &self.degrees
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    fn offset(&self, exps: &[usize]) -> usize {
        let s = strides(&self.degrees);
        exps.iter().zip(&s).map(|(e, s)| e * s).sum()
    }

    /// Coefficient of the monomial with exponents `exps` (zero outside the stored box).
    pub fn coeff(&self, exps: &[usize]) -> Rational {
        assert_eq!(exps.len(), self.nvars());
        if exps.iter().zip(&self.degrees).any(|(e, d)| e > d) {
            return Rational::zero();
        }
        self.coeffs[self.offset(exps)].clone()
    }

    /// Nonzero terms in row-major exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (decode(i, &self.degrees), c))
    }

    /// Raw coefficient tensor in row-major order.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// True degree in variable `k` (zero for the zero polynomial).
    pub fn degree(&self, k: usize) -> usize {
        self.terms().map(|(e, _)| e[k]).max().unwrap_or(0)
    }

    pub fn true_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.nvars()];
        for (e, _) in self.terms() {
            for (dk, ek) in d.iter_mut().zip(&e) {
                *dk = (*dk).max(*ek);
            }
        }
        d
    }

    /// Same polynomial stored with new degree bounds. Bounds below the true
    /// degree are an error.
    pub fn reshaped(&self, degrees: &[usize]) -> Result<Self> {
        if degrees.len() != self.nvars() {
            return Err(Error::Arity {
                expected: self.nvars(),
                got: degrees.len(),
            });
        }
        let actual = self.true_degrees();
        for (k, (&want, &have)) in degrees.iter().zip(&actual).enumerate() {
            if want < have {
                return Err(Error::DegreeTooLow {
                    var: self.vars[k].clone(),
                    requested: want,
                    actual: have,
                });
            }
        }
        let mut out = Self::with_shape(self.vars.clone(), degrees.to_vec());
        for (e, c) in self.terms() {
            let i = out.offset(&e);
            out.coeffs[i] = c.clone();
        }
        Ok(out)
    }

    /// Shrinks the degree bounds to the true degrees.
    pub fn trimmed(&self) -> Self {
        self.reshaped(&self.true_degrees())
            .expect("true degrees always fit")
    }

    fn check_same_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VariableMismatch {
                left: self.vars.clone(),
                right: other.vars.clone(),
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&mut Rational, &Rational)) -> Result<Self> {
        self.check_same_vars(other)?;
        let degrees: Vec<usize> = self
            .degrees
            .iter()
            .zip(&other.degrees)
            .map(|(a, b)| *a.max(b))
            .collect();
        let mut out = self.reshaped(&degrees)?;
        for (e, c) in other.terms() {
            let i = out.offset(&e);
            f(&mut out.coeffs[i], c);
        }
        Ok(out)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| *a += b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| *a -= b)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let degrees: Vec<usize> = self
            .degrees
            .iter()
            .zip(&other.degrees)
            .map(|(a, b)| a + b)
            .collect();
        let mut out = Self::with_shape(self.vars.clone(), degrees);
        let rhs: Vec<_> = other.terms().collect();
        for (ea, ca) in self.terms() {
            for (eb, cb) in &rhs {
                let e: Vec<usize> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let i = out.offset(&e);
                out.coeffs[i] += ca * *cb;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.clone();
        for x in &mut out.coeffs {
            *x *= c;
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.vars, Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact nested Horner evaluation.
    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars() {
            return Err(Error::Arity {
                expected: self.nvars(),
                got: point.len(),
            });
        }
        let s = strides(&self.degrees);
        Ok(self.horner(0, 0, point, &s))
    }

    fn horner(&self, level: usize, offset: usize, point: &[Rational], s: &[usize]) -> Rational {
        if level == self.nvars() {
            return self.coeffs[offset].clone();
        }
        let mut acc = Rational::zero();
        for e in (0..=self.degrees[level]).rev() {
            acc = acc * &point[level] + self.horner(level + 1, offset + e * s[level], point, s);
        }
        acc
    }

    /// Replaces `var` by `offset + scale * var`, keeping the degree bound.
    pub fn affine_substitute(
        &self,
        var: &str,
        scale: &Rational,
        offset: &Rational,
    ) -> Result<AffineSubstitution> {
        let k = self.var_index(var)?;
        let d = self.degrees[k];
        let binom = Binomials::up_to(d);
        let mut opow = vec![Rational::one(); d + 1];
        let mut spow = vec![Rational::one(); d + 1];
        for i in 1..=d {
            opow[i] = &opow[i - 1] * offset;
            spow[i] = &spow[i - 1] * scale;
        }
        let st = strides(&self.degrees)[k];
        let mut out = self.clone();
        for lin in 0..self.coeffs.len() {
            if !(lin / st).is_multiple_of(d + 1) {
                continue;
            }
            for j in 0..=d {
                let mut acc = Rational::zero();
                for e in j..=d {
                    let c = &self.coeffs[lin + e * st];
                    if c.is_zero() {
                        continue;
                    }
                    acc += c * &opow[e - j] * Rational::from_integer(binom.get(e, j));
                }
                out.coeffs[lin + j * st] = acc * &spow[j];
            }
        }
        Ok(AffineSubstitution {
            poly: out,
            collapsed: scale.is_zero(),
        })
    }

    /// [`affine_substitute`](Self::affine_substitute) without the metadata.
    pub fn substitute_affine(&self, var: &str, scale: &Rational, offset: &Rational) -> Result<Self> {
        Ok(self.affine_substitute(var, scale, offset)?.poly)
    }

    pub fn derivative(&self, var: &str) -> Result<Self> {
        let k = self.var_index(var)?;
        let mut degrees = self.degrees.clone();
        degrees[k] = degrees[k].saturating_sub(1);
        let mut out = Self::with_shape(self.vars.clone(), degrees);
        for (mut e, c) in self.terms() {
            if e[k] == 0 {
                continue;
            }
            let factor = Rational::from_integer(e[k].into());
            e[k] -= 1;
            let i = out.offset(&e);
            out.coeffs[i] = c * factor;
        }
        Ok(out)
    }

    fn drop_var(&self, k: usize, f: impl Fn(usize) -> Option<Rational>) -> Self {
        let mut vars = self.vars.clone();
        vars.remove(k);
        let mut degrees = self.degrees.clone();
        degrees.remove(k);
        let mut out = Self::with_shape(vars, degrees);
        for (mut e, c) in self.terms() {
            let ek = e.remove(k);
            if let Some(w) = f(ek) {
                let i = out.offset(&e);
                out.coeffs[i] += c * w;
            }
        }
        out
    }

    /// Fixes `var = value` and removes it from the variable list.
    pub fn partial_eval(&self, var: &str, value: &Rational) -> Result<Self> {
        let k = self.var_index(var)?;
        let mut pows = vec![Rational::one(); self.degrees[k] + 1];
        for i in 1..pows.len() {
            pows[i] = &pows[i - 1] * value;
        }
        Ok(self.drop_var(k, |e| Some(pows[e].clone())))
    }

    /// Coefficient of `var^power`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, var: &str, power: usize) -> Result<Self> {
        let k = self.var_index(var)?;
        Ok(self.drop_var(k, |e| (e == power).then(Rational::one)))
    }

    pub fn rename_var(&self, from: &str, to: &str) -> Result<Self> {
        let k = self.var_index(from)?;
        if from != to && self.vars.iter().any(|v| v == to) {
            return Err(Error::InvalidParameter(format!("variable {to:?} already present")));
        }
        let mut out = self.clone();
        out.vars[k] = to.to_string();
        Ok(out)
    }

    /// Re-expresses the polynomial over `vars`, which must contain every current
    /// variable (in any order) and may add new ones.
    pub fn extend_vars<S: AsRef<str>>(&self, vars: &[S]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::InvalidParameter(format!("duplicate variable {v:?}")));
            }
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .ok_or_else(|| Error::UnknownVariable(v.clone()))
            })
            .collect::<Result<_>>()?;
        let terms = self.terms().map(|(e, c)| {
            let mut ne = vec![0; vars.len()];
            for (old, &new) in map.iter().enumerate() {
                ne[new] = e[old];
            }
            (ne, c.clone())
        });
        let p = Self::from_terms(&vars, terms.collect::<Vec<_>>())?;
        Ok(p)
    }

    /// Exact quotient by `var^power`.
    pub fn divide_by_monomial(&self, var: &str, power: usize) -> Result<Self> {
        let k = self.var_index(var)?;
        let mut degrees = self.degrees.clone();
        degrees[k] = degrees[k].saturating_sub(power);
        let mut out = Self::with_shape(self.vars.clone(), degrees);
        for (mut e, c) in self.terms() {
            if e[k] < power {
                return Err(Error::NotDivisible(format!("term with {var}^{} by {var}^{power}", e[k])));
            }
            e[k] -= power;
            let i = out.offset(&e);
            out.coeffs[i] = c.clone();
        }
        Ok(out)
    }

    /// Parses an arithmetic expression over `vars`: `+ - * / ^`, parentheses,
    /// integer literals and implicit multiplication by juxtaposition. Division
    /// is only allowed by nonzero constants.
    pub fn parse<S: AsRef<str>>(vars: &[S], src: &str) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut parser = ExprParser {
            src: src.as_bytes(),
            pos: 0,
            vars: &vars,
        };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.error("unexpected trailing input"));
        }
        Ok(p)
    }

    /// Stable SHA-256 over the canonical interchange form.
    pub fn content_hash(&self) -> String {
        let json = serde_json::to_string(&PolyJson::from(self.clone())).expect("serializable");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.checked_sub(other).map(|d| d.is_zero()).unwrap_or(false)
    }
}

impl Eq for MultiPoly {}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut terms: Vec<_> = self.terms().collect();
        terms.reverse();
        for (e, c) in terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono: Vec<String> = e
                .iter()
                .zip(&self.vars)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{abs}*{}", mono.join("*"))?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$checked(rhs).expect("operands must share a variable list")
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Builds polynomials over one fixed variable list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Self {
        PolyRing {
            vars: vars.iter().map(|v| v.as_ref().to_string()).collect(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Panics on an unknown name.
    pub fn var(&self, name: &str) -> MultiPoly {
        MultiPoly::variable(&self.vars, name).expect("variable belongs to the ring")
    }

    pub fn constant(&self, c: Rational) -> MultiPoly {
        MultiPoly::constant(&self.vars, c)
    }

    pub fn int(&self, n: i64) -> MultiPoly {
        self.constant(Rational::from_integer(n.into()))
    }

    pub fn parse(&self, src: &str) -> Result<MultiPoly> {
        MultiPoly::parse(&self.vars, src)
    }
}

/// JSON interchange: `{"vars":[..],"terms":[{"e":[..],"num":"..","den":".."}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolyJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<usize>,
    pub num: String,
    pub den: String,
}

impl From<MultiPoly> for PolyJson {
    fn from(p: MultiPoly) -> Self {
        let terms = p
            .terms()
            .map(|(e, c)| {
                let r = RationalRepr::from(c);
                TermJson {
                    e,
                    num: r.num,
                    den: r.den,
                }
            })
            .collect();
        PolyJson {
            vars: p.vars.clone(),
            terms,
        }
    }
}

impl TryFrom<PolyJson> for MultiPoly {
    type Error = Error;

    fn try_from(j: PolyJson) -> Result<Self> {
        let mut seen = BTreeMap::new();
        for (i, v) in j.vars.iter().enumerate() {
            if seen.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidParameter(format!("duplicate variable {v:?}")));
            }
        }
        let terms = j
            .terms
            .iter()
            .map(|t| {
                let c = Rational::try_from(&RationalRepr {
                    num: t.num.clone(),
                    den: t.den.clone(),
                })?;
                Ok((t.e.clone(), c))
            })
            .collect::<Result<Vec<_>>>()?;
        MultiPoly::from_terms(&j.vars, terms)
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl ExprParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Expression {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { acc + rhs } else { acc - rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.true_degrees().iter().any(|&k| k > 0) {
                        return Err(self.error("division by a non-constant"));
                    }
                    let c = d.coeffs[0].clone();
                    if c.is_zero() {
                        return Err(self.error("division by zero"));
                    }
                    acc = acc.scale(&c.recip());
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() || c == b'_' => {
                    acc = acc * self.unary()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            let e: u32 = digits.parse().map_err(|_| self.error("expected exponent"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Ok(MultiPoly::constant(self.vars, parse_rational(digits)?))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                MultiPoly::variable(self.vars, name)
            }
            _ => Err(self.error("expected a number, variable or '('")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn ring() -> PolyRing {
        PolyRing::new(&["x"])
    }

    #[test]
    fn add_cancels_and_pads() {
        let r = ring();
        let x = r.var("x");
        assert!((&x + &(-&x)).is_zero());
        let sum = r.parse("1 + x").unwrap() + r.parse("x^2").unwrap();
        assert_eq!(sum, r.parse("1 + x + x^2").unwrap());
        assert_eq!(sum.degree_bounds(), &[2]);
    }

    #[test]
    fn mul_expands() {
        let r = ring();
        let prod = r.parse("1 + x").unwrap() * r.parse("1 - x").unwrap();
        assert_eq!(prod, r.parse("1 - x^2").unwrap());
        let za = PolyRing::new(&["z", "a"]);
        let lhs = za.var("z") * za.parse("1 + a z").unwrap();
        assert_eq!(lhs, za.parse("z + a z^2").unwrap());
    }

    #[test]
    fn mismatched_vars_are_rejected() {
        let p = MultiPoly::variable(&["x", "y"], "x").unwrap();
        let q = MultiPoly::variable(&["y", "x"], "x").unwrap();
        assert!(matches!(p.checked_add(&q), Err(Error::VariableMismatch { .. })));
        assert!(p.checked_mul(&q).is_err());
        assert_ne!(p, q);
    }

    #[test]
    fn eval_examples() {
        let r = ring();
        assert_eq!(r.parse("x^2").unwrap().eval(&[rat(3, 2)]).unwrap(), rat(9, 4));
        let qa = PolyRing::new(&["x", "a"]);
        let q = qa.parse("2 a x^2 + x + 1 - a").unwrap();
        for a in [rat(1, 4), rat(1, 2), rat(7, 3)] {
            assert_eq!(q.eval(&[int(-1), a.clone()]).unwrap(), a);
        }
        assert!(matches!(q.eval(&[int(1)]), Err(Error::Arity { expected: 2, got: 1 })));
    }

    #[test]
    fn derivative_examples() {
        let qa = PolyRing::new(&["x", "a"]);
        let q = qa.parse("2 a x^2 + x + 1 - a").unwrap();
        assert_eq!(q.derivative("x").unwrap(), qa.parse("4 a x + 1").unwrap());
        let r = PolyRing::new(&["p"]);
        let o = r.parse("256 - 88 p - 128 p^2 + 56 p^3 - 23 p^4").unwrap();
        assert_eq!(
            o.derivative("p").unwrap(),
            r.parse("-88 - 256 p + 168 p^2 - 92 p^3").unwrap()
        );
        assert!(r.int(7).derivative("p").unwrap().is_zero());
    }

    #[test]
    fn affine_substitution() {
        let r = PolyRing::new(&["p", "x"]);
        let f = r.parse("p^3 - 2 p x + x^2 + 5").unwrap();
        let id = f.affine_substitute("x", &int(1), &int(0)).unwrap();
        assert_eq!(id.poly, f);
        assert!(!id.collapsed);
        let g = f.substitute_affine("p", &rat(1, 8), &rat(3, 8)).unwrap();
        assert_eq!(g.degree_bounds(), f.degree_bounds());
        let pt = [rat(1, 3), rat(-2, 5)];
        let mapped = [rat(3, 8) + rat(1, 8) * &pt[0], pt[1].clone()];
        assert_eq!(g.eval(&pt).unwrap(), f.eval(&mapped).unwrap());
        let c = f.affine_substitute("p", &int(0), &int(2)).unwrap();
        assert!(c.collapsed);
        assert_eq!(c.poly.degree(0), 0);
    }

    #[test]
    fn partial_eval_and_coefficients() {
        let r = PolyRing::new(&["p", "y"]);
        let f = r.parse("p y^2 + 3 y + p^2").unwrap();
        let at1 = f.partial_eval("y", &int(1)).unwrap();
        assert_eq!(at1, PolyRing::new(&["p"]).parse("p + 3 + p^2").unwrap());
        let c2 = f.coefficient_of("y", 2).unwrap();
        assert_eq!(c2, PolyRing::new(&["p"]).var("p"));
        assert!(f.divide_by_monomial("p", 1).is_err());
        let g = r.parse("p^2 y + p^3").unwrap().divide_by_monomial("p", 2).unwrap();
        assert_eq!(g, r.parse("y + p").unwrap());
    }

    #[test]
    fn extend_and_rename() {
        let f = PolyRing::new(&["t"]).parse("1 + t^2").unwrap();
        let g = f.extend_vars(&["p", "t"]).unwrap();
        assert_eq!(g.eval(&[int(5), int(2)]).unwrap(), int(5));
        assert!(f.extend_vars(&["p"]).is_err());
        let h = g.rename_var("t", "u").unwrap();
        assert_eq!(h.vars(), &["p".to_string(), "u".to_string()]);
        assert!(g.rename_var("t", "p").is_err());
    }

    #[test]
    fn parser_handles_implicit_products_and_fractions() {
        let r = PolyRing::new(&["p", "u"]);
        let f = r.parse("9/8 p^6 u^3 - 21/4 p (1 - u)^2").unwrap();
        assert_eq!(f.coeff(&[6, 3]), rat(9, 8));
        assert_eq!(f.coeff(&[1, 1]), rat(21, 2));
        assert!(r.parse("p / u").is_err());
        assert!(r.parse("p + q").is_err());
        assert!(r.parse("(p + 1").is_err());
    }

    #[test]
    fn json_round_trip_is_lossless() {
        let r = PolyRing::new(&["p", "x", "u"]);
        let f = r.parse("9/8 p^6 u^3 - 123456789012345678901234567890 x/7 + 1").unwrap();
        let s = f.to_json();
        assert!(s.contains(r#"{"e":[6,0,3],"num":"9","den":"8"}"#));
        let back = MultiPoly::from_json(&s).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.content_hash(), f.content_hash());
        assert!(MultiPoly::from_json(r#"{"vars":["p"],"terms":[{"e":[1],"num":"1","den":"0"}]}"#).is_err());
    }

    #[test]
    fn display_is_readable() {
        let r = PolyRing::new(&["p", "x"]);
        assert_eq!(r.parse("2 p^2 x - x + 1/3").unwrap().to_string(), "2*p^2*x - x + 1/3");
        assert_eq!(r.int(0).to_string(), "0");
    }
}
