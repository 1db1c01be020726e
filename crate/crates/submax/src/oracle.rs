//! Exact optimum by exhaustive enumeration.
//!
//! Enumerates every size-`k` subset in lexicographic order of ascending index
//! tuples and keeps the best. The work is embarrassingly parallel: ranks
//! `0..C(n,k)` split into contiguous ranges, each range starts from its
//! unranked combination, and partial winners merge under the total order
//! (value descending, then lexicographically smaller tuple). That merge is
//! associative and commutative, so the parallel result is bit-identical to
//! the sequential scan no matter how the ranges are assigned to threads.

use crate::error::Error;
use crate::function::SetFunction;
use crate::set::Subset;
use crate::Result;

/// Refuse enumerations larger than this many subsets unless the caller
/// explicitly raises the cap.
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub best_set: Subset,
    pub best_value: f64,
    /// Exactly `C(n, k)`.
    pub sets_evaluated: u64,
}

/// `C(n, k)` without overflow surprises; `None` means it exceeds `u128`.
pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        // Exact at every step: acc holds C(n, i-1) and the running product
        // C(n, i-1) * (n - k... ) stays divisible by i.
        acc = acc.checked_mul((n - k + i) as u128)? / i as u128;
    }
    Some(acc)
}

/// Lexicographic successor of `comb` among ascending `k`-tuples over `0..n`.
/// Returns false when `comb` is already the last combination.
fn next_combination(comb: &mut [usize], n: usize) -> bool {
    let k = comb.len();
    for i in (0..k).rev() {
        if comb[i] < n - k + i {
            comb[i] += 1;
            for j in i + 1..k {
                comb[j] = comb[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// The combination at position `rank` of the lexicographic enumeration.
#[cfg(feature = "parallel")]
fn unrank(n: usize, k: usize, rank: u128) -> Vec<usize> {
    let mut comb = Vec::with_capacity(k);
    let mut r = rank;
    let mut next = 0usize;
    let mut remaining = k;
    while remaining > 0 {
        let with_next = binomial(n - next - 1, remaining - 1)
            .expect("cap keeps counts within u128");
        if r < with_next {
            comb.push(next);
            remaining -= 1;
        } else {
            r -= with_next;
        }
        next += 1;
    }
    comb
}

fn validate(n: usize, k: usize, cap: u64) -> Result<u64> {
    if k == 0 {
        return Err(Error::KZero);
    }
    if k > n {
        return Err(Error::KExceedsGroundSet { k, n });
    }
    let count = binomial(n, k);
    let over = match count {
        Some(c) => c > cap as u128,
        None => true,
    };
    if over {
        return Err(Error::OracleCap {
            n,
            k,
            count: count.map_or_else(|| "at least 2^128".to_string(), |c| c.to_string()),
            cap,
        });
    }
    Ok(count.unwrap() as u64)
}

struct Candidate {
    value: f64,
    members: Vec<usize>,
}

impl Candidate {
    /// True when `self` wins: larger value, or equal value and
    /// lexicographically smaller tuple.
    #[cfg(feature = "parallel")]
    fn beats(&self, other: &Candidate) -> bool {
        self.value > other.value
            || (self.value == other.value && self.members < other.members)
    }
}

fn scan_range<F: SetFunction>(
    f: &F,
    n: usize,
    start: Vec<usize>,
    len: u64,
) -> Result<Candidate> {
    let mut comb = start;
    let mut best: Option<Candidate> = None;
    for _ in 0..len {
        let subset = Subset::from_members(n, &comb)?;
        let value = f.evaluate(&subset)?;
        let better = match &best {
            None => true,
            Some(b) => value > b.value,
        };
        if better {
            best = Some(Candidate {
                value,
                members: comb.clone(),
            });
        }
        next_combination(&mut comb, n);
    }
    Ok(best.expect("range is non-empty"))
}

/// Exhaustive optimum with the default enumeration cap.
pub fn brute_force_opt<F: SetFunction + Sync>(f: &F, k: usize) -> Result<OracleResult> {
    brute_force_opt_with_cap(f, k, DEFAULT_CAP)
}

/// Exhaustive optimum, refusing to enumerate more than `cap` subsets.
/// Dispatches to the parallel scan when the `parallel` feature is on.
pub fn brute_force_opt_with_cap<F: SetFunction + Sync>(
    f: &F,
    k: usize,
    cap: u64,
) -> Result<OracleResult> {
    #[cfg(feature = "parallel")]
    {
        brute_force_opt_par(f, k, cap)
    }
    #[cfg(not(feature = "parallel"))]
    {
        brute_force_opt_seq(f, k, cap)
    }
}

/// Single-threaded enumeration. Always available; the parallel variant must
/// produce bit-identical results.
pub fn brute_force_opt_seq<F: SetFunction>(f: &F, k: usize, cap: u64) -> Result<OracleResult> {
    let n = f.ground_size();
    let count = validate(n, k, cap)?;
    let first: Vec<usize> = (0..k).collect();
    let best = scan_range(f, n, first, count)?;
    Ok(OracleResult {
        best_set: Subset::from_members(n, &best.members)?,
        best_value: best.value,
        sets_evaluated: count,
    })
}

/// Rank-partitioned parallel enumeration.
#[cfg(feature = "parallel")]
pub fn brute_force_opt_par<F: SetFunction + Sync>(
    f: &F,
    k: usize,
    cap: u64,
) -> Result<OracleResult> {
    use rayon::prelude::*;

    let n = f.ground_size();
    let count = validate(n, k, cap)?;
    // Chunk geometry depends only on the instance, not on thread count.
    let chunk = (count / 256).max(4096);
    let ranges: Vec<(u64, u64)> = (0..count)
        .step_by(chunk as usize)
        .map(|start| (start, chunk.min(count - start)))
        .collect();

    let best = ranges
        .into_par_iter()
        .map(|(start, len)| scan_range(f, n, unrank(n, k, start as u128), len))
        .try_reduce_with(|a, b| Ok(if b.beats(&a) { b } else { a }))
        .expect("at least one range")?;

    Ok(OracleResult {
        best_set: Subset::from_members(n, &best.members)?,
        best_value: best.value,
        sets_evaluated: count,
    })
}
