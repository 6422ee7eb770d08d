//! Integer partition counting and abelian-group counting.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::factor;

/// Exact `p(n)` by dynamic programming over allowed part sizes.
pub fn partition_count(n: u64) -> BigUint {
    partition_counts_up_to(n).pop().unwrap()
}

/// `p(0), ..., p(n)` in one pass.
pub fn partition_counts_up_to(n: u64) -> Vec<BigUint> {
    let n = n as usize;
    let mut ways = vec![BigUint::zero(); n + 1];
    ways[0] = BigUint::one();
    for part in 1..=n {
        for total in part..=n {
            let add = ways[total - part].clone();
            ways[total] += add;
        }
    }
    ways
}

/// Independent route for `p(n)`: the two-argument recursion
/// `p(n, k) = p(n - k, k) + p(n, k - 1)` counting partitions with parts of
/// size at most `k`, memoized. Used to cross-check [`partition_count`].
pub fn partition_count_recursive(n: u64) -> BigUint {
    let n = n as usize;
    let mut memo = vec![vec![None; n + 1]; n + 1];
    fn rec(n: usize, k: usize, memo: &mut Vec<Vec<Option<BigUint>>>) -> BigUint {
        if n == 0 {
            return BigUint::one();
        }
        if k == 0 {
            return BigUint::zero();
        }
        if let Some(v) = &memo[n][k] {
            return v.clone();
        }
        let mut v = rec(n, k - 1, memo);
        if k <= n {
            v += rec(n - k, k, memo);
        }
        memo[n][k] = Some(v.clone());
        v
    }
    rec(n, n, &mut memo)
}

/// Table `t[k]` of partitions of `n` into exactly `k` parts, `k = 0..=n`.
pub fn partition_counts_by_parts(n: u64) -> Vec<BigUint> {
    let n = n as usize;
    // ways[k][m]: partitions of m into exactly k parts
    let mut prev = vec![BigUint::zero(); n + 1];
    prev[0] = BigUint::one();
    let mut out = vec![BigUint::zero(); n + 1];
    out[0] = if n == 0 { BigUint::one() } else { BigUint::zero() };
    for k in 1..=n {
        let mut cur = vec![BigUint::zero(); n + 1];
        for m in k..=n {
            // smallest part is 1 (drop it) or all parts >= 2 (subtract 1 each)
            let mut v = prev[m - 1].clone();
            if m >= k {
                v += cur[m - k].clone();
            }
            cur[m] = v;
        }
        out[k] = cur[n].clone();
        prev = cur;
    }
    out
}

/// All partitions of `n` as non-increasing part lists, lexicographically
/// descending. Enumeration route, independent of the counting DPs.
pub fn partitions_of(n: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(remaining: u64, max_part: u64, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        let top = max_part.min(remaining);
        for part in (1..=top).rev() {
            current.push(part);
            rec(remaining - part, part, current, out);
            current.pop();
        }
    }
    rec(n, n, &mut current, &mut out);
    out
}

/// The asymptotic estimate `exp(pi sqrt(2n/3)) / (4 n sqrt(3))` for `p(n)`.
pub fn hardy_ramanujan_estimate(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::Precondition(
            "partition estimate is undefined at n = 0".into(),
        ));
    }
    let x = n as f64;
    Ok((std::f64::consts::PI * (2.0 * x / 3.0).sqrt()).exp() / (4.0 * x * 3.0f64.sqrt()))
}

/// Number of isomorphism classes of abelian groups of order `n`: the product
/// of `p(a)` over the prime factorization `n = prod q^a`.
pub fn count_abelian_groups(n: u64) -> BigUint {
    assert!(n >= 1);
    factor(n)
        .into_iter()
        .map(|(_, a)| partition_count(a as u64))
        .product()
}
