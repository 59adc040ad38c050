//! Finite alphabets of `q`-shifted variables and symmetric functions on
//! them: complete homogeneous `h_r`, products `h_lambda`, and Schur
//! functions via Jacobi-Trudi determinants, with a bialternant cross-check.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::laurent::{LaurentPoly, Monomial, VarContext};
use crate::qpoly::ScalarQ;
use crate::{Error, Result};

/// Partition: weakly decreasing sequence of positive integers.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Accepts a weakly decreasing sequence; trailing zeros are trimmed.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInstance(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `v^+`: the entries of `v` sorted decreasingly. All entries must be
    /// nonnegative.
    pub fn sorted_desc(v: &[i64]) -> Result<Self> {
        let mut parts = Vec::with_capacity(v.len());
        for &e in v {
            if e < 0 {
                return Err(Error::InvalidInstance(format!(
                    "cannot form a partition from negative entry {e}"
                )));
            }
            parts.push(e as u32);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of positive parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `|lambda|`, the sum of the parts.
    pub fn weight(&self) -> i64 {
        self.parts.iter().map(|p| *p as i64).sum()
    }

    /// Part at 0-based position `k`, zero-padded.
    pub fn part(&self, k: usize) -> u32 {
        self.parts.get(k).copied().unwrap_or(0)
    }

    /// Sum of the first `j` parts (zero-padded).
    pub fn prefix_sum(&self, j: usize) -> i64 {
        self.parts
            .iter()
            .take(j)
            .map(|p| *p as i64)
            .sum()
    }

    /// The partition with the first `k` parts removed.
    pub fn drop_head(&self, k: usize) -> Partition {
        Partition {
            parts: self.parts.get(k..).map(|s| s.to_vec()).unwrap_or_default(),
        }
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.parts
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The alphabet of letters `q^e * x_i`: for `i <= n0` the powers
/// `q^0..q^(a_i - 2)`, for `i > n0` the powers `q^0..q^(a_i - 1)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    n: usize,
    letters: Vec<(usize, u32)>, // (x index, q power), x index 1-based
}

impl Alphabet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[(usize, u32)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Evaluation context: the `n` x-variables, no w-variables.
    pub fn ctx(&self) -> VarContext {
        VarContext::new(self.n, 0)
    }

    /// The letters as monomials of `ctx`, with their q-powers.
    pub fn letter_monomials(&self, ctx: VarContext) -> Vec<(Monomial, i64)> {
        self.letters
            .iter()
            .map(|&(i, e)| (Monomial::var(ctx, ctx.x(i), 1), e as i64))
            .collect()
    }
}

/// Build the truncated alphabet for the composition `a` with `n0` shortened
/// slots.
pub fn build_alphabet(a: &[u32], n0: usize) -> Result<Alphabet> {
    let n = a.len();
    if n0 > n {
        return Err(Error::InvalidInstance(format!("n0 = {n0} exceeds n = {n}")));
    }
    if let Some(i) = a.iter().position(|&ai| ai == 0) {
        return Err(Error::InvalidInstance(format!(
            "a[{}] = 0; all entries must be positive",
            i + 1
        )));
    }
    let mut letters = Vec::new();
    for (idx, &ai) in a.iter().enumerate() {
        let count = if idx < n0 { ai - 1 } else { ai };
        for e in 0..count {
            letters.push((idx + 1, e));
        }
    }
    Ok(Alphabet { n, letters })
}

/// Incremental table of `h_0, h_1, ...` for a fixed letter set.
pub struct HBasis {
    ctx: VarContext,
    letters: Vec<(Monomial, i64)>,
    table: Vec<LaurentPoly>, // table[r] = h_r
}

impl HBasis {
    pub fn new(alphabet: &Alphabet) -> Self {
        let ctx = alphabet.ctx();
        HBasis {
            ctx,
            letters: alphabet.letter_monomials(ctx),
            table: vec![LaurentPoly::one(ctx)],
        }
    }

    pub fn from_letters(ctx: VarContext, letters: Vec<(Monomial, i64)>) -> Self {
        HBasis {
            ctx,
            letters,
            table: vec![LaurentPoly::one(ctx)],
        }
    }

    pub fn ctx(&self) -> VarContext {
        self.ctx
    }

    /// `h_r` of the letters, extending the table as needed.
    ///
    /// Letter-by-letter convolution of the truncated generating product:
    /// after each letter `y`, `H[m] += y * H[m-1]` with `H` the running
    /// table.
    pub fn h(&mut self, r: u32) -> LaurentPoly {
        let r = r as usize;
        if r >= self.table.len() {
            let mut table = vec![LaurentPoly::one(self.ctx)];
            table.extend((1..=r).map(|_| LaurentPoly::zero(self.ctx)));
            for (m, e) in &self.letters {
                let c = ScalarQ::q_pow(*e);
                for deg in 1..=r {
                    let bump = table[deg - 1].mul_monomial(m, &c);
                    table[deg] = &table[deg] + &bump;
                }
            }
            self.table = table;
        }
        self.table[r].clone()
    }

    /// Signed `h_m` with the Jacobi-Trudi convention `h_m = 0` for `m < 0`.
    fn h_signed(&mut self, m: i64) -> LaurentPoly {
        if m < 0 {
            LaurentPoly::zero(self.ctx)
        } else {
            self.h(m as u32)
        }
    }
}

/// The `r`-th complete homogeneous symmetric function of the alphabet.
pub fn complete_h(r: u32, alphabet: &Alphabet) -> LaurentPoly {
    HBasis::new(alphabet).h(r)
}

/// `h_lambda = h_{lambda_1} ... h_{lambda_k}` of the alphabet.
pub fn h_lambda(lambda: &Partition, alphabet: &Alphabet) -> LaurentPoly {
    let mut basis = HBasis::new(alphabet);
    h_lambda_with(lambda, &mut basis)
}

pub fn h_lambda_with(lambda: &Partition, basis: &mut HBasis) -> LaurentPoly {
    let mut acc = LaurentPoly::one(basis.ctx());
    for &p in lambda.parts() {
        acc = &acc * &basis.h(p);
    }
    acc
}

/// Schur function of the alphabet via the Jacobi-Trudi determinant
/// `det(h_{lambda_i - i + j})` of size `max(len(lambda), 1)`.
pub fn schur_jt(lambda: &Partition, alphabet: &Alphabet) -> LaurentPoly {
    let mut basis = HBasis::new(alphabet);
    schur_jt_with(lambda, &mut basis)
}

pub fn schur_jt_with(lambda: &Partition, basis: &mut HBasis) -> LaurentPoly {
    let size = lambda.len().max(1);
    let mut matrix = Vec::with_capacity(size);
    for i in 0..size {
        let mut row = Vec::with_capacity(size);
        for j in 0..size {
            let m = lambda.part(i) as i64 - i as i64 + j as i64;
            row.push(basis.h_signed(m));
        }
        matrix.push(row);
    }
    det_laurent(basis.ctx(), &matrix)
}

/// Determinant over [`LaurentPoly`] by dynamic programming on column
/// subsets; zero entries and vanished minors are skipped, which keeps the
/// banded Jacobi-Trudi matrices cheap.
fn det_laurent(ctx: VarContext, matrix: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = matrix.len();
    assert!(n <= 64, "determinant too large");
    let mut level: HashMap<u64, LaurentPoly> = HashMap::new();
    level.insert(0u64, LaurentPoly::one(ctx));
    for (row_idx, row) in matrix.iter().enumerate() {
        let mut next: HashMap<u64, LaurentPoly> = HashMap::new();
        for (mask, minor) in &level {
            let mut seen = 0usize;
            for (j, entry) in row.iter().enumerate() {
                let bit = 1u64 << j;
                if mask & bit != 0 {
                    seen += 1;
                    continue;
                }
                if entry.is_zero() {
                    continue;
                }
                // Laplace sign for appending (row_idx, column j) to a minor
                // that already uses `seen` earlier columns.
                let mut contrib = minor * entry;
                if (row_idx + seen) % 2 == 1 {
                    contrib = -&contrib;
                }
                match next.entry(mask | bit) {
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        let sum = e.get() + &contrib;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                    std::collections::hash_map::Entry::Vacant(e) => {
                        if !contrib.is_zero() {
                            e.insert(contrib);
                        }
                    }
                }
            }
        }
        level = next;
        if level.is_empty() {
            return LaurentPoly::zero(ctx);
        }
    }
    let full = (1u64 << n) - 1;
    level
        .remove(&full)
        .unwrap_or_else(|| LaurentPoly::zero(ctx))
}

/// Schur function from the bialternant ratio: the alternant determinant
/// `det(y_i^(lambda_j + N - j))` over the letters `y_1..y_N`, divided by the
/// Vandermonde product `prod_{i<j} (y_i - y_j)`.
///
/// The division is certified by a multiplication-back check against the
/// Jacobi-Trudi value rather than performed as a multivariate division.
pub fn schur_bialternant(
    lambda: &Partition,
    letters: &[(Monomial, i64)],
    ctx: VarContext,
) -> Result<LaurentPoly> {
    let n = letters.len();
    if n < lambda.len() {
        return Err(Error::OutOfRange(format!(
            "{n} letters cannot carry a partition of length {}",
            lambda.len()
        )));
    }
    if n == 0 {
        return Ok(LaurentPoly::one(ctx));
    }
    let as_poly = |idx: usize| {
        let (m, e) = &letters[idx];
        LaurentPoly::monomial(ctx, m.clone(), ScalarQ::q_pow(*e))
    };
    for i in 0..n {
        for j in i + 1..n {
            if letters[i] == letters[j] {
                return Err(Error::Degenerate(
                    "repeated letters make the Vandermonde determinant vanish".into(),
                ));
            }
        }
    }
    // Alternant matrix entry (i, j): y_i ^ (lambda_j + n - j - 1), 0-based j.
    let mut matrix = Vec::with_capacity(n);
    for i in 0..n {
        let (m, e) = &letters[i];
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let exp = lambda.part(j) as i64 + (n - 1 - j) as i64;
            let exp32: i32 = exp.try_into().map_err(|_| {
                Error::OutOfRange("alternant exponent exceeds i32".into())
            })?;
            row.push(LaurentPoly::monomial(
                ctx,
                m.pow(exp32),
                ScalarQ::q_pow(e * exp),
            ));
        }
        matrix.push(row);
    }
    let alternant = det_laurent(ctx, &matrix);
    let mut vandermonde = LaurentPoly::one(ctx);
    for i in 0..n {
        for j in i + 1..n {
            vandermonde = &vandermonde * &(&as_poly(i) - &as_poly(j));
        }
    }
    // Candidate quotient from Jacobi-Trudi over the same letters.
    let mut basis = HBasis::from_letters(ctx, letters.to_vec());
    let candidate = schur_jt_with(lambda, &mut basis);
    if &candidate * &vandermonde != alternant {
        return Err(Error::Hypothesis(
            "alternant is not the Vandermonde multiple of the Jacobi-Trudi value".into(),
        ));
    }
    Ok(candidate)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::parse_laurent;

    fn lp(ctx: VarContext, s: &str) -> LaurentPoly {
        parse_laurent(ctx, s).unwrap()
    }

    #[test]
    fn build_alphabet_examples() {
        let a = build_alphabet(&[2, 1], 1).unwrap();
        assert_eq!(a.letters(), &[(1, 0), (2, 0)]);
        let a = build_alphabet(&[1, 1], 0).unwrap();
        assert_eq!(a.letters(), &[(1, 0), (2, 0)]);
        let a = build_alphabet(&[1], 1).unwrap();
        assert!(a.is_empty());
        assert!(build_alphabet(&[0, 1], 0).is_err());
        assert!(build_alphabet(&[1], 2).is_err());
    }

    #[test]
    fn alphabet_letter_count() {
        for n0 in 0..=3 {
            let a = build_alphabet(&[3, 1, 2], n0).unwrap();
            let total: u32 = 6;
            assert_eq!(a.len() as u32, total - n0 as u32);
        }
    }

    #[test]
    fn complete_h_examples() {
        // h_2 of {x1, q x1} = (1 + q + q^2) x1^2
        let alph = Alphabet {
            n: 1,
            letters: vec![(1, 0), (1, 1)],
        };
        let ctx = alph.ctx();
        assert_eq!(complete_h(2, &alph), lp(ctx, "(1 + q + q^2)*x1^2"));
        assert_eq!(complete_h(0, &alph), LaurentPoly::one(ctx));

        let alph = build_alphabet(&[2, 1], 1).unwrap();
        let ctx = alph.ctx();
        assert_eq!(complete_h(1, &alph), lp(ctx, "x1 + x2"));
    }

    #[test]
    fn h_lambda_examples() {
        let alph = build_alphabet(&[1, 1], 0).unwrap();
        let ctx = alph.ctx();
        assert_eq!(
            h_lambda(&Partition::empty(), &alph),
            LaurentPoly::one(ctx)
        );
        let p11 = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(h_lambda(&p11, &alph), lp(ctx, "x1^2 + 2*x1*x2 + x2^2"));

        let alph = Alphabet {
            n: 1,
            letters: vec![(1, 0), (1, 1)],
        };
        let p2 = Partition::new(vec![2]).unwrap();
        assert_eq!(h_lambda(&p2, &alph), complete_h(2, &alph));
    }

    #[test]
    fn schur_jt_examples() {
        let alph = build_alphabet(&[1, 1], 0).unwrap();
        let ctx = alph.ctx();
        let p11 = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(schur_jt(&p11, &alph), lp(ctx, "x1*x2"));
        let p3 = Partition::new(vec![3]).unwrap();
        assert_eq!(schur_jt(&p3, &alph), complete_h(3, &alph));
        assert_eq!(schur_jt(&Partition::empty(), &alph), LaurentPoly::one(ctx));
        // length beyond the alphabet vanishes
        let p111 = Partition::new(vec![1, 1, 1]).unwrap();
        assert!(schur_jt(&p111, &alph).is_zero());
    }

    #[test]
    fn bialternant_examples() {
        let alph = build_alphabet(&[1, 1], 0).unwrap();
        let ctx = alph.ctx();
        let letters = alph.letter_monomials(ctx);
        let p11 = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(
            schur_bialternant(&p11, &letters, ctx).unwrap(),
            lp(ctx, "x1*x2")
        );
        let p1 = Partition::new(vec![1]).unwrap();
        assert_eq!(
            schur_bialternant(&p1, &letters, ctx).unwrap(),
            lp(ctx, "x1 + x2")
        );
        let solo = vec![letters[0].clone()];
        assert_eq!(
            schur_bialternant(&Partition::empty(), &solo, ctx).unwrap(),
            LaurentPoly::one(ctx)
        );
        // repeated letters are rejected
        let repeated = vec![letters[0].clone(), letters[0].clone()];
        assert!(schur_bialternant(&p1, &repeated, ctx).is_err());
    }

    #[test]
    fn jt_matches_bialternant_on_truncated_alphabets() {
        for (a, n0) in [(vec![2u32, 2], 0usize), (vec![3, 1], 1), (vec![2, 1, 1], 1)] {
            let alph = build_alphabet(&a, n0).unwrap();
            let ctx = alph.ctx();
            let letters = alph.letter_monomials(ctx);
            for parts in [vec![], vec![1], vec![2], vec![1, 1], vec![2, 1], vec![2, 2]] {
                let lam = Partition::new(parts).unwrap();
                if lam.len() > letters.len() {
                    continue;
                }
                let jt = schur_jt(&lam, &alph);
                let bi = schur_bialternant(&lam, &letters, ctx).unwrap();
                assert_eq!(jt, bi, "a = {a:?}, n0 = {n0}, lambda = {lam}");
            }
        }
    }

    #[test]
    fn h_r_symmetric_under_letter_permutation() {
        let alph = build_alphabet(&[2, 2], 0).unwrap();
        let ctx = alph.ctx();
        let mut letters = alph.letter_monomials(ctx);
        letters.reverse();
        let mut permuted = HBasis::from_letters(ctx, letters);
        for r in 0..=3 {
            assert_eq!(complete_h(r, &alph), permuted.h(r));
        }
    }

    #[test]
    fn generating_function_truncation() {
        // sum_r h_r z^r agrees with the truncated expansion of
        // prod 1/(1 - z*letter) up to degree 4; verified by multiplying the
        // series back by prod (1 - z*letter) and checking 1 + O(z^5).
        let alph = build_alphabet(&[2, 1], 0).unwrap();
        let ctx = alph.ctx();
        let r_max = 4u32;
        let mut basis = HBasis::new(&alph);
        // Treat z-degree as the index of a vector of LaurentPoly.
        let series: Vec<LaurentPoly> = (0..=r_max).map(|r| basis.h(r)).collect();
        let mut product: Vec<LaurentPoly> = series;
        for (m, e) in alph.letter_monomials(ctx) {
            // multiply by (1 - z * letter): new[k] = old[k] - letter*old[k-1]
            let c = ScalarQ::q_pow(e);
            let mut next = product.clone();
            for k in 1..product.len() {
                next[k] = &next[k] - &product[k - 1].mul_monomial(&m, &c);
            }
            product = next;
        }
        assert_eq!(product[0], LaurentPoly::one(ctx));
        for term in &product[1..] {
            assert!(term.is_zero());
        }
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(vec![2, 1, 1]).is_ok());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 0, 0]).unwrap().len(), 1);
        let p = Partition::sorted_desc(&[0, 3, 1]).unwrap();
        assert_eq!(p.parts(), &[3, 1]);
        assert!(Partition::sorted_desc(&[1, -1]).is_err());
        assert_eq!(p.prefix_sum(1), 3);
        assert_eq!(p.prefix_sum(5), 4);
    }
}
