//! Exact arithmetic in the formal variable `q`.
//!
//! [`QPoly`] is a polynomial in `q` over arbitrary-precision integers;
//! [`ScalarQ`] is a reduced fraction of two such polynomials. All
//! q-combinatorial scalars (shifted factorials, q-binomial and
//! q-multinomial coefficients) live here.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense polynomial in `q` with integer coefficients, ascending by degree.
///
/// Canonical form: no trailing zero coefficients; the zero polynomial has
/// empty storage.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        QPoly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        QPoly::from_coeffs(vec![c])
    }

    /// The monomial `c * q^k`.
    pub fn term(c: BigInt, k: usize) -> Self {
        if c.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        QPoly { coeffs }
    }

    /// `q^k`.
    pub fn q_pow(k: usize) -> Self {
        QPoly::term(BigInt::one(), k)
    }

    /// `1 - q^e` for `e >= 1`; `e == 0` gives the zero polynomial.
    pub fn one_minus_q_pow(e: usize) -> Self {
        if e == 0 {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); e + 1];
        coeffs[0] = BigInt::one();
        coeffs[e] = -BigInt::one();
        QPoly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `q^k` (zero outside the support).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Greatest common divisor of the coefficients (nonnegative; 0 for 0).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn scale(&self, c: &BigInt) -> QPoly {
        if c.is_zero() {
            return QPoly::zero();
        }
        QPoly {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divide every coefficient by `c`; all divisions must be exact.
    fn div_int(&self, c: &BigInt) -> QPoly {
        QPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|x| {
                    let (d, r) = x.div_rem(c);
                    debug_assert!(r.is_zero());
                    d
                })
                .collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: usize) -> QPoly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    /// Exact division; `None` when the remainder is nonzero or a
    /// coefficient division fails over the integers.
    pub fn exact_div(&self, d: &QPoly) -> Option<QPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(QPoly::zero());
        }
        let dd = d.degree().unwrap();
        let nd = self.degree()?;
        if nd < dd {
            return None;
        }
        let lead = d.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = std::mem::take(&mut rem[k + dd]);
            if top.is_zero() {
                continue;
            }
            let (c, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (i, dc) in d.coeffs.iter().enumerate().take(dd) {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(QPoly::from_coeffs(quot))
    }

    /// Primitive part with positive leading coefficient.
    fn primitive(&self) -> QPoly {
        if self.is_zero() {
            return QPoly::zero();
        }
        let mut c = self.content();
        if self.leading_coeff().unwrap().is_negative() {
            c = -c;
        }
        self.div_int(&c)
    }

    /// GCD in `Z[q]` (content included), normalized to a positive leading
    /// coefficient. Primitive pseudo-remainder sequence.
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        if self.is_zero() {
            return other.primitive().scale(&other.content().abs());
        }
        if other.is_zero() {
            return self.primitive().scale(&self.content().abs());
        }
        let content = self.content().gcd(&other.content());
        let mut a = self.primitive();
        let mut b = other.primitive();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive().scale(&content)
    }

    /// Pseudo-remainder: remainder of `lc(d)^(deg a - deg d + 1) * a` by `d`.
    fn pseudo_rem(&self, d: &QPoly) -> QPoly {
        let dd = d.degree().expect("pseudo_rem by zero");
        let lead = d.coeffs.last().unwrap().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let top = r.coeffs.last().unwrap().clone();
            // r <- lc(d)*r - lc(r)*q^(rd-dd)*d
            let mut next = r.scale(&lead);
            let sub = d.scale(&top).shift(rd - dd);
            next = &next - &sub;
            debug_assert!(next.degree().map_or(true, |nd| nd < rd));
            r = next;
        }
        r
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero);
            if let Some(d) = rhs.coeffs.get(k) {
                c += d;
            }
            coeffs.push(c);
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero);
            if let Some(d) = rhs.coeffs.get(k) {
                c -= d;
            }
            coeffs.push(c);
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        QPoly::from_coeffs(coeffs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($t:ty, $trait:ident, $method:ident) => {
        impl $trait for $t {
            type Output = $t;
            fn $method(self, rhs: $t) -> $t {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&$t> for $t {
            type Output = $t;
            fn $method(self, rhs: &$t) -> $t {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned_binop!(QPoly, Add, add);
forward_owned_binop!(QPoly, Sub, sub);
forward_owned_binop!(QPoly, Mul, mul);

impl Neg for QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        -&self
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{mag}*q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Reduced fraction of two [`QPoly`] values.
///
/// Canonical form: `gcd(num, den) = 1` in `Z[q]` (integer content
/// included) and the denominator has a positive leading coefficient, so
/// structural equality decides mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarQ {
    num: QPoly,
    den: QPoly,
}

impl ScalarQ {
    pub fn new(num: QPoly, den: QPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(ScalarQ::zero());
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).expect("gcd divides numerator");
        let mut den = den.exact_div(&g).expect("gcd divides denominator");
        if den.leading_coeff().unwrap().is_negative() {
            num = -num;
            den = -den;
        }
        Ok(ScalarQ { num, den })
    }

    pub fn zero() -> Self {
        ScalarQ {
            num: QPoly::zero(),
            den: QPoly::one(),
        }
    }

    pub fn one() -> Self {
        ScalarQ {
            num: QPoly::one(),
            den: QPoly::one(),
        }
    }

    pub fn from_poly(p: QPoly) -> Self {
        ScalarQ {
            num: p,
            den: QPoly::one(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        ScalarQ::from_poly(QPoly::constant(BigInt::from(v)))
    }

    /// `q^e` for any integer `e`.
    pub fn q_pow(e: i64) -> Self {
        if e >= 0 {
            ScalarQ::from_poly(QPoly::q_pow(e as usize))
        } else {
            ScalarQ {
                num: QPoly::one(),
                den: QPoly::q_pow((-e) as usize),
            }
        }
    }

    /// `1 - q^e` for any integer `e` (zero when `e == 0`).
    pub fn one_minus_q_pow(e: i64) -> Self {
        if e >= 0 {
            ScalarQ::from_poly(QPoly::one_minus_q_pow(e as usize))
        } else {
            // 1 - q^e = (q^{-e} - 1) / q^{-e}
            let k = (-e) as usize;
            ScalarQ {
                num: -QPoly::one_minus_q_pow(k),
                den: QPoly::q_pow(k),
            }
        }
    }

    pub fn num(&self) -> &QPoly {
        &self.num
    }

    pub fn den(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The underlying polynomial when the denominator is 1.
    pub fn as_poly(&self) -> Option<&QPoly> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<ScalarQ> {
        ScalarQ::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &ScalarQ) -> Result<ScalarQ> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self * &rhs.inv()?)
    }

    /// Equality by cross multiplication, bypassing the canonical form.
    pub fn cross_eq(&self, other: &ScalarQ) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Add for &ScalarQ {
    type Output = ScalarQ;
    fn add(self, rhs: &ScalarQ) -> ScalarQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        ScalarQ::new(num, den).expect("nonzero denominator")
    }
}

impl Sub for &ScalarQ {
    type Output = ScalarQ;
    fn sub(self, rhs: &ScalarQ) -> ScalarQ {
        self + &(-rhs)
    }
}

impl Mul for &ScalarQ {
    type Output = ScalarQ;
    fn mul(self, rhs: &ScalarQ) -> ScalarQ {
        if self.is_zero() || rhs.is_zero() {
            return ScalarQ::zero();
        }
        // Cross-reduce before multiplying to keep intermediates small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.exact_div(&g1).unwrap();
        let d2 = rhs.den.exact_div(&g1).unwrap();
        let n2 = rhs.num.exact_div(&g2).unwrap();
        let d1 = self.den.exact_div(&g2).unwrap();
        ScalarQ::new(&n1 * &n2, &d1 * &d2).expect("nonzero denominator")
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Div for &ScalarQ {
    type Output = ScalarQ;
    fn div(self, rhs: &ScalarQ) -> ScalarQ {
        self.checked_div(rhs).expect("division by zero ScalarQ")
    }
}

forward_owned_binop!(ScalarQ, Add, add);
forward_owned_binop!(ScalarQ, Sub, sub);
forward_owned_binop!(ScalarQ, Mul, mul);
forward_owned_binop!(ScalarQ, Div, div);

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        -&self
    }
}

impl From<QPoly> for ScalarQ {
    fn from(p: QPoly) -> Self {
        ScalarQ::from_poly(p)
    }
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// q-shifted factorial at a pure q-power: `(q^c; q)_k`.
///
/// The result is polynomial exactly when `c >= 0`; negative `c` yields a
/// fraction with a q-power denominator.
pub fn poch_int(c: i64, k: u32) -> ScalarQ {
    let mut acc = ScalarQ::one();
    for t in 0..k as i64 {
        acc = &acc * &ScalarQ::one_minus_q_pow(c + t);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// q-binomial coefficient as an exact polynomial.
///
/// Returns 0 for `k < 0` or `k > n >= 0`; `k == 0` gives 1 for any `n`.
/// Negative `n` with `k >= 1` is rejected (the defining quotient is not a
/// polynomial there).
pub fn q_binomial(n: i64, k: i64) -> Result<QPoly> {
    if k < 0 {
        return Ok(QPoly::zero());
    }
    if k == 0 {
        return Ok(QPoly::one());
    }
    if n < 0 {
        return Err(Error::OutOfRange(format!(
            "q_binomial({n}, {k}) is not a polynomial"
        )));
    }
    if k > n {
        return Ok(QPoly::zero());
    }
    // (q^{n-k+1})_k / (q)_k, an exact division.
    let mut num = QPoly::one();
    for t in 0..k {
        num = &num * &QPoly::one_minus_q_pow((n - k + 1 + t) as usize);
    }
    let mut den = QPoly::one();
    for t in 1..=k {
        den = &den * &QPoly::one_minus_q_pow(t as usize);
    }
    Ok(num.exact_div(&den).expect("q-binomial division is exact"))
}

/// q-multinomial coefficient `(q)_n / ((q)_{t_1} ... (q)_{t_k} (q)_{n - sum t})`.
///
/// Any mass not covered by `parts` is treated as one implicit extra part.
pub fn q_multinomial(n: i64, parts: &[i64]) -> Result<QPoly> {
    if n < 0 {
        return Err(Error::OutOfRange(format!("q_multinomial with n = {n}")));
    }
    if let Some(p) = parts.iter().find(|p| **p < 0) {
        return Err(Error::OutOfRange(format!("negative multinomial part {p}")));
    }
    let total: i64 = parts.iter().sum();
    if total > n {
        return Err(Error::OutOfRange(format!(
            "multinomial parts sum to {total} > {n}"
        )));
    }
    let mut rem = n;
    let mut acc = QPoly::one();
    for &t in parts {
        acc = &acc * &q_binomial(rem, t)?;
        rem -= t;
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Text format: "1 + q - 2*q^3", "(q - 1) / (q)".
// ---------------------------------------------------------------------------

const MAX_Q_EXPONENT: i64 = 4096;
const MAX_GROUP_EXPONENT: i64 = 64;
const MAX_PARSE_DEPTH: usize = 96;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            bytes: s.as_bytes(),
            pos: 0,
        }
    }

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

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_uint(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected integer");
        }
        let s = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(s.parse::<BigInt>().unwrap())
    }

    fn parse_exponent(&mut self) -> Result<i64> {
        let neg = self.eat(b'-');
        let mag = self.parse_uint()?;
        let mag: i64 = mag
            .try_into()
            .map_err(|_| Error::Parse {
                at: self.pos,
                msg: "exponent too large".into(),
            })
            .and_then(|m: i64| {
                if m > MAX_Q_EXPONENT {
                    Err(Error::Parse {
                        at: self.pos,
                        msg: "exponent too large".into(),
                    })
                } else {
                    Ok(m)
                }
            })?;
        Ok(if neg { -mag } else { mag })
    }

    fn parse_expr(&mut self, depth: usize) -> Result<ScalarQ> {
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

    fn parse_term(&mut self, depth: usize) -> Result<ScalarQ> {
        let mut acc = self.parse_factor(depth)?;
        loop {
            if self.eat(b'*') {
                acc = &acc * &self.parse_factor(depth)?;
            } else if self.eat(b'/') {
                let rhs = self.parse_factor(depth)?;
                acc = acc
                    .checked_div(&rhs)
                    .map_err(|_| Error::Parse {
                        at: self.pos,
                        msg: "division by zero".into(),
                    })?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self, depth: usize) -> Result<ScalarQ> {
        if self.eat(b'-') {
            return Ok(-&self.parse_factor(depth)?);
        }
        let is_q = matches!(self.peek(), Some(b'q'));
        let base = self.parse_atom(depth)?;
        if self.eat(b'^') {
            let e = self.parse_exponent()?;
            if is_q {
                return Ok(ScalarQ::q_pow(e));
            }
            if e.abs() > MAX_GROUP_EXPONENT {
                return self.err("exponent too large for a grouped base");
            }
            return pow_scalar(&base, e).map_err(|_| Error::Parse {
                at: self.pos,
                msg: "zero base with negative exponent".into(),
            });
        }
        Ok(base)
    }

    fn parse_atom(&mut self, depth: usize) -> Result<ScalarQ> {
        match self.peek() {
            Some(b'q') => {
                self.pos += 1;
                Ok(ScalarQ::q_pow(1))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.parse_expr(depth + 1)?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(b) if b.is_ascii_digit() => {
                let n = self.parse_uint()?;
                Ok(ScalarQ::from_poly(QPoly::constant(n)))
            }
            Some(b) => self.err(format!("unexpected byte {:?}", b as char)),
            None => self.err("unexpected end of input"),
        }
    }

    fn finish(&mut self) -> Result<()> {
        if self.peek().is_some() {
            self.err("trailing input")
        } else {
            Ok(())
        }
    }
}

fn pow_scalar(base: &ScalarQ, e: i64) -> Result<ScalarQ> {
    let positive = if e < 0 { base.inv()? } else { base.clone() };
    let mut acc = ScalarQ::one();
    for _ in 0..e.unsigned_abs() {
        acc = &acc * &positive;
    }
    Ok(acc)
}

/// Parse the canonical scalar grammar.
pub fn parse_scalar(s: &str) -> Result<ScalarQ> {
    let mut p = Parser::new(s);
    let v = p.parse_expr(0)?;
    p.finish()?;
    Ok(v)
}

impl FromStr for ScalarQ {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_scalar(s)
    }
}

impl FromStr for QPoly {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let v = parse_scalar(s)?;
        match v.as_poly() {
            Some(p) => Ok(p.clone()),
            None => Err(Error::Parse {
                at: 0,
                msg: "value is not a polynomial in q".into(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qp(s: &str) -> QPoly {
        s.parse().unwrap()
    }

    fn sq(s: &str) -> ScalarQ {
        s.parse().unwrap()
    }

    #[test]
    fn poch_int_examples() {
        assert!(poch_int(1, 0).is_one());
        assert_eq!(poch_int(1, 2), ScalarQ::from_poly(qp("1 - q - q^2 + q^3")));
        // 1 - q^{-1} = (q - 1)/q
        let v = poch_int(-1, 1);
        assert_eq!(v.num(), &qp("-1 + q"));
        assert_eq!(v.den(), &qp("q"));
        // (1; q)_k vanishes for k >= 1
        assert!(poch_int(0, 3).is_zero());
    }

    #[test]
    fn q_binomial_examples() {
        assert_eq!(q_binomial(2, 1).unwrap(), qp("1 + q"));
        assert_eq!(q_binomial(4, 2).unwrap(), qp("1 + q + 2*q^2 + q^3 + q^4"));
        assert!(q_binomial(3, -1).unwrap().is_zero());
        assert!(q_binomial(3, 4).unwrap().is_zero());
        assert!(q_binomial(-2, 0).unwrap().is_one());
        assert!(q_binomial(-2, 1).is_err());
    }

    #[test]
    fn q_binomial_symmetry_degree_positivity() {
        for n in 0..=8i64 {
            for k in 0..=n {
                let b = q_binomial(n, k).unwrap();
                assert_eq!(b, q_binomial(n, n - k).unwrap());
                assert_eq!(b.degree(), Some((k * (n - k)) as usize));
                assert!(b.coeffs().iter().all(|c| !c.is_negative()));
            }
        }
    }

    #[test]
    fn q_binomial_pascal() {
        for n in 1..=8i64 {
            for k in 0..=n {
                let lhs = q_binomial(n, k).unwrap();
                let rhs = &q_binomial(n - 1, k - 1).unwrap()
                    + &(&QPoly::q_pow(k as usize) * &q_binomial(n - 1, k).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn q_multinomial_examples() {
        assert_eq!(q_multinomial(3, &[1, 1, 1]).unwrap(), qp("1 + 2*q + 2*q^2 + q^3"));
        assert!(q_multinomial(5, &[5]).unwrap().is_one());
        assert_eq!(q_multinomial(2, &[1]).unwrap(), q_binomial(2, 1).unwrap());
        assert!(q_multinomial(2, &[2, 1]).is_err());
    }

    #[test]
    fn scalar_arith_examples() {
        let one_minus_q = ScalarQ::from_poly(qp("1 - q"));
        let a = ScalarQ::one().checked_div(&one_minus_q).unwrap();
        let b = sq("-q") / one_minus_q.clone();
        assert!((&a + &b).is_one());
        assert_eq!(sq("(1 - q^2) / (1 - q)"), ScalarQ::from_poly(qp("1 + q")));
        let c = sq("(q - 1) / (q)");
        let d = sq("(q) / (q - 1)");
        assert!((&c * &d).is_one());
        assert!(matches!(
            ScalarQ::one().checked_div(&ScalarQ::zero()),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn poch_reversal() {
        // (q^{-j})_j * q^{j(j+1)/2} = (-1)^j (q)_j
        for j in 0..=8u32 {
            let lhs = &poch_int(-(j as i64), j) * &ScalarQ::q_pow((j * (j + 1) / 2) as i64);
            let sign = ScalarQ::from_int(if j % 2 == 0 { 1 } else { -1 });
            let rhs = &sign * &poch_int(1, j);
            assert_eq!(lhs, rhs, "j = {j}");
        }
    }

    #[test]
    fn display_and_parse_round_trip() {
        let p = qp("1 + q - 2*q^3");
        assert_eq!(p.to_string(), "1 + q - 2*q^3");
        let v = sq("(q - 1) / (q)");
        assert_eq!(v.to_string(), "(-1 + q) / (q)");
        assert_eq!(sq(&v.to_string()), v);
        assert_eq!(qp("-1 + q").to_string(), "-1 + q");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<ScalarQ>().is_err());
        assert!("q^".parse::<ScalarQ>().is_err());
        assert!("(1 + q".parse::<ScalarQ>().is_err());
        assert!("1 / 0".parse::<ScalarQ>().is_err());
        assert!("q^999999999999".parse::<ScalarQ>().is_err());
        assert!("x".parse::<ScalarQ>().is_err());
    }

    fn arb_qpoly() -> impl Strategy<Value = QPoly> {
        prop::collection::vec(-4i64..=4, 0..6)
            .prop_map(|cs| QPoly::from_coeffs(cs.into_iter().map(BigInt::from).collect()))
    }

    fn arb_scalar() -> impl Strategy<Value = ScalarQ> {
        (arb_qpoly(), arb_qpoly()).prop_map(|(n, d)| {
            if d.is_zero() {
                ScalarQ::from_poly(n)
            } else {
                ScalarQ::new(n, d).unwrap()
            }
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_qpoly(), b in arb_qpoly(), c in arb_qpoly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn degree_multiplicative(a in arb_qpoly(), b in arb_qpoly()) {
            if !a.is_zero() && !b.is_zero() {
                let p = &a * &b;
                prop_assert_eq!(
                    p.degree().unwrap(),
                    a.degree().unwrap() + b.degree().unwrap()
                );
            }
        }

        #[test]
        fn scalar_eq_iff_cross_eq(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!(a == b, a.cross_eq(&b));
        }

        #[test]
        fn scalar_field_ops(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a * &b) / &b, a.clone());
            }
        }

        #[test]
        fn scalar_display_round_trip(a in arb_scalar()) {
            prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
        }
    }
}
