//! Brute-force evaluation of the two-part generalized constant terms.
//!
//! [`dyson_product`] expands the truncated-exponent Dyson kernel exactly;
//! [`Evaluator`] extracts coefficients of `x^v` from `h_lambda * kernel`
//! (or `s_lambda * kernel`) by a dot product against the cached kernel.
//! This module is the ground-truth oracle every identity and recursion is
//! checked against.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::laurent::{LaurentPoly, Monomial, VarContext};
use crate::qpoly::ScalarQ;
use crate::splitting::FactoredRational;
use crate::symfun::{build_alphabet, h_lambda_with, schur_jt_with, Alphabet, HBasis, Partition};
use crate::{Error, Result};

/// Full parameter tuple of `D_{v,lambda}(a; n, n0)`.
///
/// JSON form: `{"a":[...], "n0":k, "v":[...], "lambda":[...]}` with `n`
/// inferred from `a`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawInstance", into = "RawInstance")]
pub struct DysonInstance {
    a: Vec<u32>,
    n0: usize,
    v: Vec<i64>,
    lambda: Partition,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawInstance {
    a: Vec<u32>,
    n0: usize,
    v: Vec<i64>,
    lambda: Vec<u32>,
}

impl TryFrom<RawInstance> for DysonInstance {
    type Error = Error;
    fn try_from(raw: RawInstance) -> Result<Self> {
        DysonInstance::new(raw.a, raw.n0, raw.v, Partition::new(raw.lambda)?)
    }
}

impl From<DysonInstance> for RawInstance {
    fn from(inst: DysonInstance) -> RawInstance {
        RawInstance {
            lambda: inst.lambda.parts().to_vec(),
            a: inst.a,
            n0: inst.n0,
            v: inst.v,
        }
    }
}

impl DysonInstance {
    pub fn new(a: Vec<u32>, n0: usize, v: Vec<i64>, lambda: Partition) -> Result<Self> {
        validate_params(&a, n0)?;
        if v.len() != a.len() {
            return Err(Error::InvalidInstance(format!(
                "v has length {}, expected n = {}",
                v.len(),
                a.len()
            )));
        }
        Ok(DysonInstance { a, n0, v, lambda })
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn v(&self) -> &[i64] {
        &self.v
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    /// Deterministic key, used to order report output.
    pub fn key(&self) -> String {
        format!(
            "a={:?} n0={} v={:?} lambda={}",
            self.a, self.n0, self.v, self.lambda
        )
    }
}

impl std::fmt::Display for DysonInstance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.key())
    }
}

fn validate_params(a: &[u32], n0: usize) -> Result<()> {
    if a.is_empty() {
        return Err(Error::InvalidInstance("n must be at least 1".into()));
    }
    if let Some(i) = a.iter().position(|&ai| ai == 0) {
        return Err(Error::InvalidInstance(format!(
            "a[{}] = 0; entries must be positive",
            i + 1
        )));
    }
    if n0 > a.len() {
        return Err(Error::InvalidInstance(format!(
            "n0 = {} exceeds n = {}",
            n0,
            a.len()
        )));
    }
    Ok(())
}

/// Pochhammer exponents of the pair `(i, j)` with `i < j` (1-based): the
/// truncation indicator is taken at the smaller index.
fn pair_exponents(a: &[u32], n0: usize, i: usize, j: usize) -> (u32, u32) {
    let chi = u32::from(i <= n0);
    (a[i - 1] - chi, a[j - 1] - chi)
}

/// The Dyson kernel over an arbitrary live subset of the x-variables
/// (1-based original labels, ascending), with truncation at the original
/// `n0`. Factors are folded in `(i, j)` lexicographic order.
pub(crate) fn dyson_kernel(a: &[u32], n0: usize, live: &[usize], ctx: VarContext) -> LaurentPoly {
    let mut acc = LaurentPoly::one(ctx);
    for (pos, &i) in live.iter().enumerate() {
        for &j in &live[pos + 1..] {
            let (e1, e2) = pair_exponents(a, n0, i, j);
            let m_ij = Monomial::ratio(ctx, ctx.x(i), ctx.x(j));
            for t in 0..e1 as i64 {
                acc = acc.mul_linear(t, &m_ij);
            }
            let m_ji = m_ij.inv();
            for t in 0..e2 as i64 {
                acc = acc.mul_linear(1 + t, &m_ji);
            }
        }
    }
    acc
}

/// `prod_{i<j} (x_i/x_j)_{a_i - chi(i<=n0)} (q x_j/x_i)_{a_j - chi(i<=n0)}`.
pub fn dyson_product(a: &[u32], n0: usize) -> Result<LaurentPoly> {
    validate_params(a, n0)?;
    let n = a.len();
    let ctx = VarContext::new(n, 0);
    let live: Vec<usize> = (1..=n).collect();
    Ok(dyson_kernel(a, n0, &live, ctx))
}

/// Constant term of the Dyson kernel, computed by expansion.
pub fn two_part_ct(a: &[u32], n0: usize) -> Result<ScalarQ> {
    Ok(dyson_product(a, n0)?.constant_term())
}

/// Cached evaluation state for one `(a, n0)` pair: the expanded kernel and
/// the symmetric functions of the truncated alphabet computed so far.
pub struct Evaluator {
    a: Vec<u32>,
    n0: usize,
    ctx: VarContext,
    kernel: LaurentPoly,
    basis: HBasis,
    h_cache: HashMap<Partition, LaurentPoly>,
    s_cache: HashMap<Partition, LaurentPoly>,
}

impl Evaluator {
    pub fn new(a: &[u32], n0: usize) -> Result<Self> {
        let kernel = dyson_product(a, n0)?;
        let alphabet: Alphabet = build_alphabet(a, n0)?;
        Ok(Evaluator {
            a: a.to_vec(),
            n0,
            ctx: kernel.ctx(),
            basis: HBasis::new(&alphabet),
            kernel,
            h_cache: HashMap::new(),
            s_cache: HashMap::new(),
        })
    }

    pub fn a(&self) -> &[u32] {
        &self.a
    }

    pub fn n0(&self) -> usize {
        self.n0
    }

    pub fn kernel(&self) -> &LaurentPoly {
        &self.kernel
    }

    pub fn two_part_ct(&self) -> ScalarQ {
        self.kernel.constant_term()
    }

    /// `D_{v,lambda}(a; n, n0)`: coefficient of `x^v` in
    /// `h_lambda(alphabet) * kernel`.
    pub fn d_brute(&mut self, v: &[i64], lambda: &Partition) -> Result<ScalarQ> {
        if !self.h_cache.contains_key(lambda) {
            let h = h_lambda_with(lambda, &mut self.basis);
            self.h_cache.insert(lambda.clone(), h);
        }
        let weight = self.h_cache.get(lambda).unwrap();
        dot_against(&self.kernel, weight, v, self.ctx)
    }

    /// The Schur variant, with `s_lambda` in place of `h_lambda`.
    pub fn d_brute_schur(&mut self, v: &[i64], lambda: &Partition) -> Result<ScalarQ> {
        if !self.s_cache.contains_key(lambda) {
            let s = schur_jt_with(lambda, &mut self.basis);
            self.s_cache.insert(lambda.clone(), s);
        }
        let weight = self.s_cache.get(lambda).unwrap();
        dot_against(&self.kernel, weight, v, self.ctx)
    }
}

/// Coefficient of `x^v` in `weight * kernel` without forming the product:
/// sum over the terms of `weight` of the matching kernel coefficient.
fn dot_against(
    kernel: &LaurentPoly,
    weight: &LaurentPoly,
    v: &[i64],
    ctx: VarContext,
) -> Result<ScalarQ> {
    if v.len() != ctx.n_x() {
        return Err(Error::InvalidInstance(format!(
            "v has length {}, expected {}",
            v.len(),
            ctx.n_x()
        )));
    }
    let mut target = Vec::with_capacity(v.len());
    for &e in v {
        let e32: i32 = e
            .try_into()
            .map_err(|_| Error::OutOfRange(format!("v entry {e} out of range")))?;
        target.push(e32);
    }
    let mut acc = ScalarQ::zero();
    for (m, c) in weight.terms() {
        let mut residual = Vec::with_capacity(target.len());
        for (idx, t) in target.iter().enumerate() {
            residual.push(t - m.exps()[idx]);
        }
        let k = kernel.coefficient(&Monomial::from_exps(ctx, residual));
        if !k.is_zero() {
            acc = &acc + &(c * &k);
        }
    }
    Ok(acc)
}

/// One-shot `D_{v,lambda}(a; n, n0)`.
pub fn d_brute(inst: &DysonInstance) -> Result<ScalarQ> {
    Evaluator::new(inst.a(), inst.n0())?.d_brute(inst.v(), inst.lambda())
}

/// One-shot Schur variant.
pub fn d_brute_schur(inst: &DysonInstance) -> Result<ScalarQ> {
    Evaluator::new(inst.a(), inst.n0())?.d_brute_schur(inst.v(), inst.lambda())
}

/// The rational function `F`: the Dyson kernel divided by
/// `prod_i prod_{j<=s} (x_i/w_j)_{a_i - chi(i<=n0)}`.
pub fn build_f(a: &[u32], n0: usize, s: usize) -> Result<FactoredRational> {
    validate_params(a, n0)?;
    if s < 1 {
        return Err(Error::InvalidInstance("s must be at least 1".into()));
    }
    let n = a.len();
    let ctx = VarContext::new(n, s);
    let live_x: Vec<usize> = (1..=n).collect();
    let live_w: Vec<usize> = (1..=s).collect();
    let (numerator, denominators) = f_parts(a, n0, &live_x, &live_w, ctx);
    Ok(FactoredRational::new(numerator, denominators))
}

/// Numerator and denominator factor list of `F` over live variable subsets
/// (original 1-based labels). Used both for the top-level `F` and for the
/// embedded `F_{n-1,...}` inside the partial-fraction coefficients.
pub(crate) fn f_parts(
    a: &[u32],
    n0: usize,
    live_x: &[usize],
    live_w: &[usize],
    ctx: VarContext,
) -> (LaurentPoly, Vec<(i64, Monomial)>) {
    let numerator = dyson_kernel(a, n0, live_x, ctx);
    let mut denominators = Vec::new();
    for &i in live_x {
        let chi = u32::from(i <= n0);
        let e = a[i - 1] - chi;
        for &t in live_w {
            let m = Monomial::ratio(ctx, ctx.x(i), ctx.w(t));
            for k in 0..e as i64 {
                denominators.push((k, m.clone()));
            }
        }
    }
    (numerator, denominators)
}

/// Coefficient of `x^v w^{-lambda}` in the geometric-series expansion of
/// `F`, truncated to the finitely many powers that can reach the target
/// w-exponents. Independent of the alphabet machinery; used to validate
/// that the constant term equals the corresponding coefficient of `F`.
pub fn coefficient_via_series(
    f: &FactoredRational,
    v: &[i64],
    lambda: &Partition,
) -> Result<ScalarQ> {
    let ctx = f.numerator().ctx();
    if v.len() != ctx.n_x() {
        return Err(Error::InvalidInstance("v length mismatch".into()));
    }
    if lambda.len() > ctx.n_w() {
        return Err(Error::InvalidInstance(
            "lambda longer than the w alphabet".into(),
        ));
    }
    let w_targets: Vec<i64> = (0..ctx.n_w()).map(|j| lambda.part(j) as i64).collect();
    let within = |p: &LaurentPoly| -> LaurentPoly {
        // Drop terms whose w-exponent already undershoots -lambda_j; the
        // expansion only decreases w-exponents further.
        let mut out = LaurentPoly::zero(ctx);
        for (m, c) in p.terms() {
            let ok = (0..ctx.n_w()).all(|j| i64::from(m.exp(ctx.w(j + 1))) >= -w_targets[j]);
            if ok {
                out = &out + &LaurentPoly::monomial(ctx, m.clone(), c.clone());
            }
        }
        out
    };
    let mut acc = within(f.numerator());
    for (e, m) in f.denominators() {
        // 1 / (1 - q^e m) = sum_k q^{ek} m^k, truncated at the largest k
        // that can still reach the target w-window.
        let mut depth = i64::MAX;
        for j in 0..ctx.n_w() {
            let we = i64::from(m.exp(ctx.w(j + 1)));
            if we < 0 {
                depth = depth.min(w_targets[j] / (-we));
            }
        }
        if depth == i64::MAX {
            return Err(Error::InvalidInstance(
                "denominator factor without a w variable".into(),
            ));
        }
        let mut series = LaurentPoly::zero(ctx);
        for k in 0..=depth {
            let k32: i32 = k
                .try_into()
                .map_err(|_| Error::OutOfRange("series depth exceeds i32".into()))?;
            series = &series + &LaurentPoly::monomial(ctx, m.pow(k32), ScalarQ::q_pow(e * k));
        }
        acc = within(&acc.checked_mul(&series)?);
    }
    let mut exps = Vec::with_capacity(ctx.len());
    for &e in v {
        exps.push(i32::try_from(e).map_err(|_| Error::OutOfRange("v entry".into()))?);
    }
    for t in &w_targets {
        exps.push(i32::try_from(-t).map_err(|_| Error::OutOfRange("lambda".into()))?);
    }
    Ok(acc.coefficient(&Monomial::from_exps(ctx, exps)))
}
