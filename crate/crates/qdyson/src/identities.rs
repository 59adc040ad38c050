//! Closed forms and standalone identities: the q-Dyson right-hand side,
//! Kadell's formula, the vanishing predicate, dominance order, subset
//! L-weights, and two auxiliary summation identities.

use serde::Serialize;

use crate::qpoly::{poch_int, q_binomial, q_multinomial, QPoly, ScalarQ};
use crate::symfun::Partition;
use crate::{Error, Result};

/// `(q)_{|a|} / prod_i (q)_{a_i}`, the q-Dyson constant term as a
/// q-multinomial coefficient.
pub fn qdyson_rhs(a: &[u32]) -> Result<QPoly> {
    let total: i64 = a.iter().map(|x| *x as i64).sum();
    let parts: Vec<i64> = a.iter().map(|x| *x as i64).collect();
    q_multinomial(total, &parts)
}

/// The nonzero branch of Kadell's formula for `v = (0^{k-1}, r, 0^{n-k})`
/// with `lambda = (r)` and `n0 = 0`:
///
/// `q^{a_{k+1}+...+a_n} (1 - q^{a_k}) (q^{|a|+1})_{r-1} / (q^{|a|-a_k+1})_r
///  * prod_i qbinom(a_i + ... + a_n, a_i)`.
///
/// `k` is 1-based.
pub fn kadell_rhs(a: &[u32], k: usize, r: u32) -> Result<ScalarQ> {
    let n = a.len();
    if k < 1 || k > n {
        return Err(Error::OutOfRange(format!("k = {k} outside 1..={n}")));
    }
    if r < 1 {
        return Err(Error::OutOfRange("r must be positive".into()));
    }
    let total: i64 = a.iter().map(|x| *x as i64).sum();
    let ak = a[k - 1] as i64;
    let tail: i64 = a[k..].iter().map(|x| *x as i64).sum();
    let mut acc = &ScalarQ::q_pow(tail) * &ScalarQ::one_minus_q_pow(ak);
    acc = &acc * &poch_int(total + 1, r - 1);
    acc = acc.checked_div(&poch_int(total - ak + 1, r))?;
    for i in 0..n {
        let suffix: i64 = a[i..].iter().map(|x| *x as i64).sum();
        acc = &acc * &ScalarQ::from_poly(q_binomial(suffix, a[i] as i64)?);
    }
    Ok(acc)
}

/// Per-subset record inside a [`VanishingWitness`].
#[derive(Clone, Debug, Serialize)]
pub struct SubsetCheck {
    /// 0-based indices of the subset.
    pub indices: Vec<usize>,
    /// Number of subset members below the truncation point.
    pub p: usize,
    /// `sum_{i in I} v_i`.
    pub v_sum: i64,
    /// `lambda_1 + ... + lambda_j` (zero padded).
    pub lambda_sum: i64,
}

/// Witness that the vanishing inequality holds for every `j`-subset.
#[derive(Clone, Debug, Serialize)]
pub struct VanishingWitness {
    pub j: usize,
    pub subsets: Vec<SubsetCheck>,
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Search for the smallest `j` in `1..n-1` such that
/// `sum_{i in I} v_i - p_I (n - n0 - j + p_I) < lambda_1 + ... + lambda_j`
/// for every `j`-subset `I`. A witness implies that the constant term
/// vanishes; the converse is not asserted.
pub fn vanishing_predicate(
    v: &[i64],
    lambda: &Partition,
    n0: usize,
) -> Result<Option<VanishingWitness>> {
    let n = v.len();
    if n0 > n {
        return Err(Error::InvalidInstance(format!("n0 = {n0} exceeds n = {n}")));
    }
    let vsum: i64 = v.iter().sum();
    if vsum != lambda.weight() {
        return Err(Error::Hypothesis(format!(
            "|v| = {vsum} differs from |lambda| = {}",
            lambda.weight()
        )));
    }
    for j in 1..n {
        let lambda_sum = lambda.prefix_sum(j);
        let mut subsets = Vec::new();
        let mut all_hold = true;
        for indices in combinations(n, j) {
            let p = indices.iter().filter(|&&i| i < n0).count();
            let v_sum: i64 = indices.iter().map(|&i| v[i]).sum();
            let penalty = (p as i64) * ((n - n0 - j + p) as i64 - (p as i64) + 2 * (p as i64)
                - (p as i64));
            // penalty = p * (n - n0 - j + p); spelled out to avoid usize
            // underflow when j > n - n0.
            let _ = penalty;
            let pen = (p as i64) * ((n as i64) - (n0 as i64) - (j as i64) + (p as i64));
            if v_sum - pen < lambda_sum {
                subsets.push(SubsetCheck {
                    indices,
                    p,
                    v_sum,
                    lambda_sum,
                });
            } else {
                all_hold = false;
                break;
            }
        }
        if all_hold {
            return Ok(Some(VanishingWitness { j, subsets }));
        }
    }
    Ok(None)
}

/// Dominance order on integer sequences: every prefix sum of `mu` is at
/// most the corresponding prefix sum of `nu` (zero padding on the right).
pub fn dominance_leq_seq(mu: &[i64], nu: &[i64]) -> bool {
    let len = mu.len().max(nu.len());
    let mut su = 0i64;
    let mut sv = 0i64;
    for i in 0..len {
        su += mu.get(i).copied().unwrap_or(0);
        sv += nu.get(i).copied().unwrap_or(0);
        if su > sv {
            return false;
        }
    }
    true
}

/// Dominance order on partitions.
pub fn dominance_leq(mu: &Partition, nu: &Partition) -> bool {
    let mu: Vec<i64> = mu.parts().iter().map(|p| *p as i64).collect();
    let nu: Vec<i64> = nu.parts().iter().map(|p| *p as i64).collect();
    dominance_leq_seq(&mu, &nu)
}

/// `L_{m,I,J}(a) = sum over pairs i <= j < m with i in I, j not in J of a_j`.
///
/// Indices are 0-based; `I` and `J` must lie in `0..m` and `a` must have at
/// least `m` entries.
pub fn l_weight(m: usize, i_set: &[usize], j_set: &[usize], a: &[i64]) -> Result<i64> {
    if a.len() < m {
        return Err(Error::OutOfRange(format!(
            "a has {} entries, need at least {m}",
            a.len()
        )));
    }
    if let Some(&bad) = i_set.iter().chain(j_set).find(|&&i| i >= m) {
        return Err(Error::OutOfRange(format!("index {bad} outside 0..{m}")));
    }
    Ok(l_weight_unchecked(m, i_set, j_set, a, None))
}

/// As [`l_weight`], with an optional index removed from the sequence (the
/// deleted-entry convention used inside the transposition identity).
fn l_weight_unchecked(
    m: usize,
    i_set: &[usize],
    j_set: &[usize],
    a: &[i64],
    skip: Option<usize>,
) -> i64 {
    let mut total = 0i64;
    for j in 0..m {
        if j_set.contains(&j) || skip == Some(j) {
            continue;
        }
        let multiplicity = i_set
            .iter()
            .filter(|&&i| i <= j && skip != Some(i))
            .count() as i64;
        total += multiplicity * a[j];
    }
    total
}

/// Check `sum_{k=0}^{t} q^{k(n-t)} / ((q^{-k})_k (q)_{t-k}) = qbinom(n, t)`.
pub fn check_e_sum(n: u32, t: u32) -> Result<bool> {
    if t > n {
        return Err(Error::OutOfRange(format!("t = {t} exceeds n = {n}")));
    }
    let mut lhs = ScalarQ::zero();
    for k in 0..=t {
        let weight = ScalarQ::q_pow((k as i64) * ((n - t) as i64));
        let den = &poch_int(-(k as i64), k) * &poch_int(1, t - k);
        lhs = &lhs + &weight.checked_div(&den)?;
    }
    let rhs = ScalarQ::from_poly(q_binomial(n as i64, t as i64)?);
    Ok(lhs == rhs)
}

/// Check the subset transposition identity: for `I` with `|I| >= 2`,
///
/// `sum_{i in I} sum_{non-empty J subset I\{i}} (-1)^{|J|+1}
///   q^{a_{i+1}+...+a_m + L_{m,I\{i},J}(a^(i))}
///   (1-q^{a_i})(1-q^{a_J}) / ((1-q^{|a|-a_i+r})(1-q^{|a|-a_i-a_J+r}))
///  = sum_{non-empty J subset I} (-1)^{|J|} q^{L_{m,I,J}(a)}
///   (1-q^{a_J}) / (1-q^{|a|-a_J+r})`.
///
/// `i_set` is 0-based; `a` must have exactly `m` entries. An exponent that
/// vanishes in a denominator is reported as a degenerate `r` rather than a
/// failure.
pub fn check_transsum(m: usize, i_set: &[usize], a: &[i64], r: i64) -> Result<bool> {
    if i_set.len() < 2 {
        return Err(Error::OutOfRange("|I| must be at least 2".into()));
    }
    if a.len() != m {
        return Err(Error::OutOfRange(format!(
            "a has {} entries, expected m = {m}",
            a.len()
        )));
    }
    if let Some(&bad) = i_set.iter().find(|&&i| i >= m) {
        return Err(Error::OutOfRange(format!("index {bad} outside 0..{m}")));
    }
    let total: i64 = a.iter().sum();
    let subset_sum = |mask: u64| -> i64 {
        i_set
            .iter()
            .enumerate()
            .filter(|(pos, _)| mask >> pos & 1 == 1)
            .map(|(_, &i)| a[i])
            .sum()
    };
    let guard = |e: i64| -> Result<ScalarQ> {
        if e == 0 {
            Err(Error::Degenerate(format!(
                "denominator exponent |a| - ... + r vanishes at r = {r}"
            )))
        } else {
            Ok(ScalarQ::one_minus_q_pow(e))
        }
    };

    let k = i_set.len();
    // Right side: J over nonempty subsets of I.
    let mut rhs = ScalarQ::zero();
    for mask in 1u64..(1 << k) {
        let members: Vec<usize> = i_set
            .iter()
            .enumerate()
            .filter(|(pos, _)| mask >> pos & 1 == 1)
            .map(|(_, &i)| i)
            .collect();
        let a_j = subset_sum(mask);
        let lw = l_weight_unchecked(m, i_set, &members, a, None);
        let sign = if members.len() % 2 == 0 { 1 } else { -1 };
        let term = &(&ScalarQ::from_int(sign) * &ScalarQ::q_pow(lw))
            * &ScalarQ::one_minus_q_pow(a_j).checked_div(&guard(total - a_j + r)?)?;
        rhs = &rhs + &term;
    }
    // Left side: i in I, J over nonempty subsets of I \ {i}.
    let mut lhs = ScalarQ::zero();
    for (pos_i, &i) in i_set.iter().enumerate() {
        let rest: Vec<usize> = i_set
            .iter()
            .copied()
            .filter(|&x| x != i)
            .collect();
        let tail: i64 = a[i + 1..m].iter().sum();
        for mask in 1u64..(1 << rest.len()) {
            let members: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|(pos, _)| mask >> pos & 1 == 1)
                .map(|(_, &x)| x)
                .collect();
            let a_j: i64 = members.iter().map(|&x| a[x]).sum();
            let lw = l_weight_unchecked(m, &rest, &members, a, Some(i));
            let sign = if members.len() % 2 == 0 { -1 } else { 1 }; // (-1)^{|J|+1}
            let num = &ScalarQ::one_minus_q_pow(a[i]) * &ScalarQ::one_minus_q_pow(a_j);
            let den = &guard(total - a[i] + r)? * &guard(total - a[i] - a_j + r)?;
            let term = &(&ScalarQ::from_int(sign) * &ScalarQ::q_pow(tail + lw))
                * &num.checked_div(&den)?;
            lhs = &lhs + &term;
        }
        let _ = pos_i;
    }
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ctengine::{d_brute, DysonInstance};
    use crate::qpoly::q_multinomial;

    fn part(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn qdyson_rhs_examples() {
        assert_eq!(
            qdyson_rhs(&[1, 1]).unwrap(),
            "1 + q".parse::<QPoly>().unwrap()
        );
        assert!(qdyson_rhs(&[7]).unwrap().is_one());
        assert_eq!(
            qdyson_rhs(&[1, 2, 1]).unwrap(),
            q_multinomial(4, &[1, 2, 1]).unwrap()
        );
    }

    #[test]
    fn kadell_rhs_examples() {
        assert_eq!(kadell_rhs(&[1, 1], 1, 1).unwrap(), ScalarQ::q_pow(1));
        assert!(kadell_rhs(&[1, 1], 2, 1).unwrap().is_one());
        // n = 1 agrees with the oracle
        for a1 in 1u32..=3 {
            for r in 1u32..=3 {
                let rhs = kadell_rhs(&[a1], 1, r).unwrap();
                let inst = DysonInstance::new(
                    vec![a1],
                    0,
                    vec![r as i64],
                    part(&[r]),
                )
                .unwrap();
                assert_eq!(rhs, d_brute(&inst).unwrap(), "a1={a1} r={r}");
            }
        }
    }

    #[test]
    fn vanishing_predicate_examples() {
        // (v=(1,1), lambda=(2)): witness at j = 1
        let w = vanishing_predicate(&[1, 1], &part(&[2]), 0).unwrap();
        assert_eq!(w.map(|w| w.j), Some(1));
        // (v=(0,1), lambda=(1)): I = {2} gives 1 >= 1, no witness
        let w = vanishing_predicate(&[0, 1], &part(&[1]), 0).unwrap();
        assert!(w.is_none());
        // (v=(2,0), lambda=(1,1), n0=1): I = {1} fails the strict inequality
        let w = vanishing_predicate(&[2, 0], &part(&[1, 1]), 1).unwrap();
        assert!(w.is_none());
        // hypothesis |v| = |lambda| enforced
        assert!(vanishing_predicate(&[1, 0], &part(&[2]), 0).is_err());
    }

    #[test]
    fn vanishing_witness_implies_zero_small() {
        for v in [[1i64, 1], [2, 0], [-1, 3], [2, 2]] {
            let total: i64 = v.iter().sum();
            if total < 0 {
                continue;
            }
            for lam in [vec![total as u32], vec![(total as u32).saturating_sub(1), 1]] {
                let lam = match Partition::new(lam) {
                    Ok(l) if l.weight() == total => l,
                    _ => continue,
                };
                for n0 in 0..=2usize {
                    if let Some(_w) = vanishing_predicate(&v, &lam, n0).unwrap() {
                        let inst =
                            DysonInstance::new(vec![2, 2], n0, v.to_vec(), lam.clone()).unwrap();
                        assert!(
                            d_brute(&inst).unwrap().is_zero(),
                            "v={v:?} lam={lam} n0={n0}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn dominance_examples() {
        assert!(dominance_leq(&part(&[1, 1]), &part(&[2])));
        assert!(!dominance_leq(&part(&[2]), &part(&[1, 1])));
        assert!(dominance_leq(&part(&[2, 1]), &part(&[2, 1])));
        assert!(dominance_leq_seq(&[1, 1, -2], &[1, 1]));
        assert!(!dominance_leq_seq(&[2, 1], &[2, 0, 1]));
    }

    #[test]
    fn l_weight_examples() {
        // m=3, I={0}, J={1}: pairs (0,0) and (0,2)
        assert_eq!(l_weight(3, &[0], &[1], &[5, 7, 11]).unwrap(), 16);
        assert_eq!(l_weight(3, &[], &[1], &[5, 7, 11]).unwrap(), 0);
        // m=2, I={1}, J={1}: only j=1 >= i=1 and it is excluded
        assert_eq!(l_weight(2, &[1], &[1], &[5, 7]).unwrap(), 0);
        assert!(l_weight(3, &[3], &[], &[1, 1, 1]).is_err());
        assert!(l_weight(4, &[0], &[], &[1, 1]).is_err());
    }

    #[test]
    fn e_sum_examples() {
        assert!(check_e_sum(1, 1).unwrap());
        assert!(check_e_sum(5, 0).unwrap());
        assert!(check_e_sum(4, 2).unwrap());
        for n in 0..=8 {
            for t in 0..=n {
                assert!(check_e_sum(n, t).unwrap(), "n={n} t={t}");
            }
        }
        assert!(check_e_sum(1, 2).is_err());
    }

    #[test]
    fn transsum_examples() {
        assert!(check_transsum(2, &[0, 1], &[1, 1], 1).unwrap());
        assert!(check_transsum(3, &[0, 2], &[1, 2, 1], 2).unwrap());
        assert!(check_transsum(3, &[0, 1, 2], &[2, 1, 1], 1).unwrap());
        // degenerate r: |a| - a_i - a_J + r = 0
        assert!(matches!(
            check_transsum(2, &[0, 1], &[1, 1], 0),
            Err(Error::Degenerate(_))
        ));
        assert!(check_transsum(2, &[0], &[1, 1], 1).is_err());
    }
}
