//! Multivariate Laurent polynomials over [`ScalarQ`] in the variables
//! `x1..xn` and `w1..ws`.
//!
//! Every value is tied to an explicit [`VarContext`]; mixing contexts is an
//! error rather than a silent reindexing.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::qpoly::{parse_scalar, ScalarQ};
use crate::{Error, Result};

/// Ambient variable set: `n_x` x-variables followed by `n_w` w-variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct VarContext {
    n_x: usize,
    n_w: usize,
}

impl VarContext {
    pub fn new(n_x: usize, n_w: usize) -> Self {
        VarContext { n_x, n_w }
    }

    pub fn n_x(&self) -> usize {
        self.n_x
    }

    pub fn n_w(&self) -> usize {
        self.n_w
    }

    pub fn len(&self) -> usize {
        self.n_x + self.n_w
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The variable `x_i`, 1-based.
    pub fn x(&self, i: usize) -> Var {
        assert!(i >= 1 && i <= self.n_x, "x{i} outside context {self}");
        Var(i - 1)
    }

    /// The variable `w_j`, 1-based.
    pub fn w(&self, j: usize) -> Var {
        assert!(j >= 1 && j <= self.n_w, "w{j} outside context {self}");
        Var(self.n_x + j - 1)
    }

    pub fn name(&self, v: Var) -> String {
        if v.0 < self.n_x {
            format!("x{}", v.0 + 1)
        } else {
            format!("w{}", v.0 - self.n_x + 1)
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (0..self.len()).map(Var)
    }
}

impl fmt::Display for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(x1..x{}, w1..w{})", self.n_x, self.n_w)
    }
}

/// A variable slot inside a [`VarContext`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Var(usize);

impl Var {
    pub fn index(&self) -> usize {
        self.0
    }
}

/// Exponent vector over a fixed ambient context; entries may be negative.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial {
    exps: Vec<i32>,
}

impl Monomial {
    pub fn unit(ctx: VarContext) -> Self {
        Monomial {
            exps: vec![0; ctx.len()],
        }
    }

    /// `var^e`.
    pub fn var(ctx: VarContext, v: Var, e: i32) -> Self {
        let mut m = Monomial::unit(ctx);
        m.exps[v.0] = e;
        m
    }

    /// `a / b`.
    pub fn ratio(ctx: VarContext, a: Var, b: Var) -> Self {
        let mut m = Monomial::unit(ctx);
        m.exps[a.0] += 1;
        m.exps[b.0] -= 1;
        m
    }

    pub fn from_exps(ctx: VarContext, exps: Vec<i32>) -> Self {
        assert_eq!(exps.len(), ctx.len(), "monomial width mismatch");
        Monomial { exps }
    }

    pub fn exps(&self) -> &[i32] {
        &self.exps
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.exps[v.0]
    }

    pub fn is_unit(&self) -> bool {
        self.exps.iter().all(|e| *e == 0)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        assert_eq!(self.exps.len(), rhs.exps.len(), "monomial width mismatch");
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&rhs.exps)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn inv(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|e| -e).collect(),
        }
    }

    pub fn pow(&self, k: i32) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .map(|e| e.checked_mul(k).expect("exponent overflow"))
                .collect(),
        }
    }

    /// Total degree (sum of exponents; may be negative).
    pub fn grade(&self) -> i64 {
        self.exps.iter().map(|e| *e as i64).sum()
    }

    fn involves(&self, v: Var) -> bool {
        self.exps[v.0] != 0
    }
}

/// Finitely supported map from [`Monomial`] to [`ScalarQ`]; no zero
/// coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    ctx: VarContext,
    terms: HashMap<Monomial, ScalarQ>,
}

impl LaurentPoly {
    pub fn zero(ctx: VarContext) -> Self {
        LaurentPoly {
            ctx,
            terms: HashMap::new(),
        }
    }

    pub fn one(ctx: VarContext) -> Self {
        LaurentPoly::constant(ctx, ScalarQ::one())
    }

    pub fn constant(ctx: VarContext, c: ScalarQ) -> Self {
        let mut p = LaurentPoly::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(ctx), c);
        }
        p
    }

    pub fn monomial(ctx: VarContext, m: Monomial, c: ScalarQ) -> Self {
        assert_eq!(m.exps.len(), ctx.len(), "monomial width mismatch");
        let mut p = LaurentPoly::zero(ctx);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn ctx(&self) -> VarContext {
        self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &ScalarQ)> {
        self.terms.iter()
    }

    /// Stored coefficient at `m`, or zero.
    pub fn coefficient(&self, m: &Monomial) -> ScalarQ {
        self.terms.get(m).cloned().unwrap_or_else(ScalarQ::zero)
    }

    /// Coefficient of the all-zero exponent vector.
    pub fn constant_term(&self) -> ScalarQ {
        self.coefficient(&Monomial::unit(self.ctx))
    }

    fn add_term(&mut self, m: Monomial, c: ScalarQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn checked_add(&self, rhs: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_ctx(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_ctx(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &LaurentPoly) -> Result<LaurentPoly> {
        self.check_ctx(rhs)?;
        let mut out = LaurentPoly::zero(self.ctx);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    fn check_ctx(&self, rhs: &LaurentPoly) -> Result<()> {
        if self.ctx == rhs.ctx {
            Ok(())
        } else {
            Err(Error::ContextMismatch(self.ctx, rhs.ctx))
        }
    }

    pub fn mul_scalar(&self, c: &ScalarQ) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.ctx);
        }
        LaurentPoly {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Multiply by the single term `c * m`.
    pub fn mul_monomial(&self, m: &Monomial, c: &ScalarQ) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.ctx);
        }
        LaurentPoly {
            ctx: self.ctx,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v * c))
                .collect(),
        }
    }

    /// Multiply by the linear factor `1 - q^e * m`.
    pub fn mul_linear(&self, e: i64, m: &Monomial) -> LaurentPoly {
        let shifted = self.mul_monomial(m, &ScalarQ::q_pow(e));
        let mut out = self.clone();
        for (mm, c) in shifted.terms {
            out.add_term(mm, -&c);
        }
        out
    }

    /// Substitute `var := q^q_exp * target`; the target must not involve
    /// `var`. The ambient context is unchanged (the variable simply no
    /// longer occurs).
    pub fn substitute(&self, var: Var, q_exp: i64, target: &Monomial) -> Result<LaurentPoly> {
        if target.involves(var) {
            return Err(Error::SelfReferentialSubstitution);
        }
        if target.exps.len() != self.ctx.len() {
            return Err(Error::OutOfRange("substitution target width".into()));
        }
        let mut out = LaurentPoly::zero(self.ctx);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            let mut stripped = m.clone();
            stripped.exps[var.0] = 0;
            let replaced = stripped.mul(&target.pow(e));
            let coeff = c * &ScalarQ::q_pow(q_exp * e as i64);
            out.add_term(replaced, coeff);
        }
        Ok(out)
    }

    /// Minimum exponent of `var` over the support; errors on zero input.
    pub fn lowest_degree_in(&self, var: Var) -> Result<i64> {
        self.terms
            .keys()
            .map(|m| m.exp(var) as i64)
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Terms in graded-lexicographic order of the exponent vectors.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &ScalarQ)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| a.grade().cmp(&b.grade()).then_with(|| a.exps.cmp(&b.exps)));
        v
    }
}

/// `(q^shift * m; q)_k`, the monomial q-shifted factorial.
pub fn poch_monomial(ctx: VarContext, m: &Monomial, k: u32, shift: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::one(ctx);
    for t in 0..k as i64 {
        acc = acc.mul_linear(shift + t, m);
    }
    acc
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("context mismatch in +")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("context mismatch in -")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("context mismatch in *")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            ctx: self.ctx,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.sorted_terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            // Coefficients that are plain monomials in q print bare; anything
            // with a sum or a denominator is parenthesized.
            let cs = c.to_string();
            let simple = c.den().is_one()
                && c.num().coeffs().iter().filter(|x| !num_traits::Zero::is_zero(*x)).count() <= 1;
            if simple {
                write!(f, "{cs}")?;
            } else {
                write!(f, "({cs})")?;
            }
            for v in self.ctx.vars() {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                if e == 1 {
                    write!(f, "*{}", self.ctx.name(v))?;
                } else {
                    write!(f, "*{}^{}", self.ctx.name(v), e)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

// ---------------------------------------------------------------------------
// Parsing: a sum of products of scalar atoms and `x<i>`/`w<j>` powers.
// ---------------------------------------------------------------------------

const MAX_VAR_EXPONENT: i64 = 1024;
const MAX_PARSE_DEPTH: usize = 64;

struct LParser<'a> {
    bytes: &'a [u8],
    pos: usize,
    ctx: VarContext,
}

enum Operand {
    Scalar(ScalarQ),
    Poly(LaurentPoly),
}

impl Operand {
    fn into_poly(self, ctx: VarContext) -> LaurentPoly {
        match self {
            Operand::Scalar(c) => LaurentPoly::constant(ctx, c),
            Operand::Poly(p) => p,
        }
    }
}

impl<'a> LParser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            at: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self
            .bytes
            .get(self.pos)
            .is_some_and(|b| b.is_ascii_whitespace())
        {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_uint(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        s.parse::<i64>()
            .ok()
            .filter(|v| *v <= MAX_VAR_EXPONENT)
            .ok_or(Error::Parse {
                at: start,
                msg: "integer too large".into(),
            })
    }

    fn parse_exponent(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let mag = self.parse_uint()?;
        Ok(if neg { -mag } else { mag })
    }

    fn parse_expr(&mut self, depth: usize) -> Result<LaurentPoly> {
        if depth > MAX_PARSE_DEPTH {
            return self.err("expression too deeply nested");
        }
        let mut acc = self.parse_term(depth)?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.parse_term(depth)?;
            } else if self.eat(b'-') {
                acc = &acc - &self.parse_term(depth)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self, depth: usize) -> Result<LaurentPoly> {
        let mut acc = self.parse_factor(depth)?.into_poly(self.ctx);
        loop {
            if self.eat(b'*') {
                let rhs = self.parse_factor(depth)?.into_poly(self.ctx);
                acc = &acc * &rhs;
            } else if self.eat(b'/') {
                let rhs = self.parse_factor(depth)?.into_poly(self.ctx);
                acc = self.divide(acc, rhs)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    /// Division is supported only by a single-term divisor.
    fn divide(&self, num: LaurentPoly, den: LaurentPoly) -> Result<LaurentPoly> {
        if den.is_zero() {
            return self.err("division by zero");
        }
        if den.num_terms() != 1 {
            return self.err("division only by a single-term divisor");
        }
        let (m, c) = den.terms().next().unwrap();
        let inv = c.inv().expect("nonzero coefficient");
        Ok(num.mul_monomial(&m.inv(), &inv))
    }

    fn parse_factor(&mut self, depth: usize) -> Result<Operand> {
        if self.eat(b'-') {
            let inner = self.parse_factor(depth)?;
            return Ok(match inner {
                Operand::Scalar(c) => Operand::Scalar(-&c),
                Operand::Poly(p) => Operand::Poly(-&p),
            });
        }
        // `q^e` and `x<i>^e`/`w<j>^e` consume their exponent inside
        // parse_atom; a remaining `^` applies to grouped or integer atoms.
        let base = self.parse_atom(depth)?;
        if self.eat(b'^') {
            let e = self.parse_exponent()?;
            return match base {
                Operand::Scalar(c) => self.pow_scalar(c, e),
                Operand::Poly(p) => self.pow_poly(p, e),
            };
        }
        Ok(base)
    }

    fn pow_scalar(&self, c: ScalarQ, e: i64) -> Result<Operand> {
        if e.unsigned_abs() > 64 {
            return self.err("exponent too large for a grouped base");
        }
        let base = if e < 0 {
            c.inv().map_err(|_| Error::Parse {
                at: self.pos,
                msg: "zero base with negative exponent".into(),
            })?
        } else {
            c
        };
        let mut acc = ScalarQ::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(Operand::Scalar(acc))
    }

    fn pow_poly(&self, p: LaurentPoly, e: i64) -> Result<Operand> {
        if p.num_terms() == 1 {
            let (m, c) = p.terms().next().unwrap();
            let e32: i32 = e.try_into().map_err(|_| Error::Parse {
                at: self.pos,
                msg: "exponent too large".into(),
            })?;
            let coeff = match self.pow_scalar(c.clone(), e)? {
                Operand::Scalar(c) => c,
                _ => unreachable!(),
            };
            return Ok(Operand::Poly(LaurentPoly::monomial(
                self.ctx,
                m.pow(e32),
                coeff,
            )));
        }
        if e < 0 {
            return self.err("negative power of a multi-term expression");
        }
        if e > 16 {
            return self.err("exponent too large for a grouped base");
        }
        let mut acc = LaurentPoly::one(self.ctx);
        for _ in 0..e {
            acc = &acc * &p;
        }
        Ok(Operand::Poly(acc))
    }

    fn parse_atom(&mut self, depth: usize) -> Result<Operand> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                if self.eat(b'^') {
                    let e = self.parse_exponent()?;
                    return Ok(Operand::Scalar(ScalarQ::q_pow(e)));
                }
                Ok(Operand::Scalar(ScalarQ::q_pow(1)))
            }
            Some(b'x') | Some(b'w') => {
                let is_x = self.peek() == Some(b'x');
                self.pos += 1;
                let i = self.parse_uint()? as usize;
                let var = if is_x {
                    if i < 1 || i > self.ctx.n_x() {
                        return self.err(format!("x{i} outside context {}", self.ctx));
                    }
                    self.ctx.x(i)
                } else {
                    if i < 1 || i > self.ctx.n_w() {
                        return self.err(format!("w{i} outside context {}", self.ctx));
                    }
                    self.ctx.w(i)
                };
                let e = if self.eat(b'^') {
                    let e = self.parse_exponent()?;
                    e.try_into().map_err(|_| Error::Parse {
                        at: self.pos,
                        msg: "exponent too large".into(),
                    })?
                } else {
                    1i32
                };
                Ok(Operand::Poly(LaurentPoly::monomial(
                    self.ctx,
                    Monomial::var(self.ctx, var, e),
                    ScalarQ::one(),
                )))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr(depth + 1)?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(Operand::Poly(inner))
            }
            Some(b) if b.is_ascii_digit() => {
                let start = self.pos;
                while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
                let scalar = parse_scalar(s)?;
                Ok(Operand::Scalar(scalar))
            }
            Some(b) => self.err(format!("unexpected byte {:?}", b as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse a Laurent polynomial in the given ambient context.
pub fn parse_laurent(ctx: VarContext, s: &str) -> Result<LaurentPoly> {
    let mut p = LParser {
        bytes: s.as_bytes(),
        pos: 0,
        ctx,
    };
    let v = p.parse_expr(0)?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx22() -> VarContext {
        VarContext::new(2, 2)
    }

    fn lp(ctx: VarContext, s: &str) -> LaurentPoly {
        parse_laurent(ctx, s).unwrap()
    }

    #[test]
    fn arithmetic_example() {
        let ctx = ctx22();
        let a = lp(ctx, "1 - x1*x2^-1");
        let b = lp(ctx, "1 - q*x2*x1^-1");
        let prod = &a * &b;
        assert_eq!(prod, lp(ctx, "1 + q - q*x2*x1^-1 - x1*x2^-1"));
        assert_eq!(&prod + &LaurentPoly::zero(ctx), prod);
        assert_eq!(&prod * &LaurentPoly::one(ctx), prod);
    }

    #[test]
    fn coefficient_examples() {
        let ctx = ctx22();
        let p = lp(ctx, "1 + q - q*x2*x1^-1 - x1*x2^-1");
        assert_eq!(
            p.constant_term(),
            ScalarQ::from_poly("1 + q".parse().unwrap())
        );
        let outside = Monomial::var(ctx, ctx.x(1), 5);
        assert!(p.coefficient(&outside).is_zero());
        let q = lp(ctx, "(1 + q)*x1");
        assert_eq!(
            q.coefficient(&Monomial::var(ctx, ctx.x(1), 1)),
            ScalarQ::from_poly("1 + q".parse().unwrap())
        );
    }

    #[test]
    fn poch_monomial_examples() {
        let ctx = ctx22();
        let m12 = Monomial::ratio(ctx, ctx.x(1), ctx.x(2));
        let m21 = Monomial::ratio(ctx, ctx.x(2), ctx.x(1));
        assert_eq!(poch_monomial(ctx, &m12, 1, 0), lp(ctx, "1 - x1*x2^-1"));
        assert_eq!(poch_monomial(ctx, &m21, 1, 1), lp(ctx, "1 - q*x2*x1^-1"));
        let m1w = Monomial::ratio(ctx, ctx.x(1), ctx.w(1));
        assert_eq!(
            poch_monomial(ctx, &m1w, 2, 0),
            lp(ctx, "1 - (1 + q)*x1*w1^-1 + q*x1^2*w1^-2")
        );
        assert_eq!(poch_monomial(ctx, &m12, 0, 3), LaurentPoly::one(ctx));
    }

    #[test]
    fn substitute_examples() {
        let ctx = ctx22();
        let w1 = ctx.w(1);
        let x1m = Monomial::var(ctx, ctx.x(1), 1);
        let p = lp(ctx, "1 - x1*w1^-1");
        assert!(p.substitute(w1, 0, &x1m).unwrap().is_zero());
        let p = lp(ctx, "w1^2");
        assert_eq!(p.substitute(w1, 1, &x1m).unwrap(), lp(ctx, "q^2*x1^2"));
        let p = lp(ctx, "1 - q*x2*w1^-1");
        assert_eq!(
            p.substitute(w1, 1, &x1m).unwrap(),
            lp(ctx, "1 - x2*x1^-1")
        );
        // target involving the substituted variable is rejected
        let bad = Monomial::var(ctx, w1, 1);
        assert!(p.substitute(w1, 0, &bad).is_err());
    }

    #[test]
    fn lowest_degree_examples() {
        let ctx = ctx22();
        let x1 = ctx.x(1);
        assert_eq!(lp(ctx, "x1^2 + q*x1^3").lowest_degree_in(x1).unwrap(), 2);
        assert_eq!(lp(ctx, "1 + x1").lowest_degree_in(x1).unwrap(), 0);
        assert_eq!(lp(ctx, "x2*x1^-1").lowest_degree_in(x1).unwrap(), -1);
        assert!(LaurentPoly::zero(ctx).lowest_degree_in(x1).is_err());
    }

    #[test]
    fn context_mismatch_is_an_error() {
        let a = LaurentPoly::one(VarContext::new(2, 0));
        let b = LaurentPoly::one(VarContext::new(3, 0));
        assert!(a.checked_add(&b).is_err());
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn display_round_trip() {
        let ctx = ctx22();
        for s in [
            "1 + q - q*x2*x1^-1 - x1*x2^-1",
            "(1 + q)*x1^2*w1^-1",
            "q^3*x1 + (1 - q)*x2 + ((1 + q) / (1 - q))*w2^2",
        ] {
            let p = lp(ctx, s);
            assert_eq!(lp(ctx, &p.to_string()), p);
        }
        assert_eq!(LaurentPoly::zero(ctx).to_string(), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        let ctx = ctx22();
        assert!(parse_laurent(ctx, "x3").is_err());
        assert!(parse_laurent(ctx, "w9").is_err());
        assert!(parse_laurent(ctx, "x1 +").is_err());
        assert!(parse_laurent(ctx, "1/(x1 + x2)").is_err());
        assert!(parse_laurent(ctx, "x1^99999999").is_err());
    }

    fn arb_small_poly() -> impl Strategy<Value = LaurentPoly> {
        let ctx = ctx22();
        prop::collection::vec(
            (
                prop::collection::vec(-2i32..=2, 4),
                -3i64..=3,
                prop::bool::ANY,
            ),
            0..5,
        )
        .prop_map(move |terms| {
            let mut p = LaurentPoly::zero(ctx);
            for (exps, c, use_q) in terms {
                let coeff = if use_q {
                    &ScalarQ::from_int(c) * &ScalarQ::q_pow(1)
                } else {
                    ScalarQ::from_int(c)
                };
                p.add_term(Monomial { exps }, coeff);
            }
            p
        })
    }

    proptest! {
        #[test]
        fn coefficient_is_linear(a in arb_small_poly(), b in arb_small_poly()) {
            let sum = &a + &b;
            for (m, _) in a.terms().chain(b.terms()) {
                let lhs = sum.coefficient(m);
                let rhs = &a.coefficient(m) + &b.coefficient(m);
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn ct_multiplicative_on_disjoint_vars(
            es1 in prop::collection::vec((-2i32..=2, -2i64..=2), 1..4),
            es2 in prop::collection::vec((-2i32..=2, -2i64..=2), 1..4),
        ) {
            // p uses x1 only, r uses x2 only
            let ctx = ctx22();
            let mut p = LaurentPoly::zero(ctx);
            for (e, c) in es1 {
                p.add_term(Monomial::var(ctx, ctx.x(1), e), ScalarQ::from_int(c));
            }
            let mut r = LaurentPoly::zero(ctx);
            for (e, c) in es2 {
                r.add_term(Monomial::var(ctx, ctx.x(2), e), ScalarQ::from_int(c));
            }
            let lhs = (&p * &r).constant_term();
            let rhs = &p.constant_term() * &r.constant_term();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn poch_splitting(j in 0u32..4, k in 0u32..4) {
            let ctx = ctx22();
            let m = Monomial::ratio(ctx, ctx.x(1), ctx.x(2));
            let lhs = poch_monomial(ctx, &m, j + k, 0);
            let rhs = &poch_monomial(ctx, &m, j, 0) * &poch_monomial(ctx, &m, k, j as i64);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
