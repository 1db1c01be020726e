#![allow(dead_code)]

use submax::objectives::{CardinalityProfile, FacilityMatrix, ModularWeights};
use submax::rng::Rng;
use submax::set::Subset;
use submax::SetFunction;

pub fn random_facility(
    rng: &mut Rng,
    m_range: (usize, usize),
    n_range: (usize, usize),
) -> FacilityMatrix {
    let m = m_range.0 + rng.below(m_range.1 - m_range.0 + 1);
    let n = n_range.0 + rng.below(n_range.1 - n_range.0 + 1);
    let rows = (0..m)
        .map(|_| (0..n).map(|_| rng.unit_f64()).collect())
        .collect();
    FacilityMatrix::new(rows).expect("entries are in [0,1)")
}

pub fn random_modular(rng: &mut Rng, n_range: (usize, usize)) -> ModularWeights {
    let n = n_range.0 + rng.below(n_range.1 - n_range.0 + 1);
    ModularWeights::new((0..n).map(|_| 5.0 * rng.unit_f64()).collect())
        .expect("weights are non-negative")
}

/// Scaled square profile `g(i) = c·i²`: monotone, never submodular for n ≥ 2.
pub fn crafted_square(rng: &mut Rng, n: usize) -> CardinalityProfile {
    let c = 0.5 + 1.5 * rng.unit_f64();
    CardinalityProfile::new((1..=n).map(|i| c * (i * i) as f64).collect()).unwrap()
}

/// Doubling profile `g(i) = c·(2^i − 1)`: gains grow with set size.
pub fn crafted_doubling(rng: &mut Rng, n: usize) -> CardinalityProfile {
    let c = 0.5 + rng.unit_f64();
    CardinalityProfile::new((1..=n as u32).map(|i| c * ((1u64 << i) - 1) as f64).collect())
        .unwrap()
}

/// Linear profile with a jump at the very top: the last element added is
/// suddenly worth 11 instead of 1.
pub fn crafted_late_jump(n: usize) -> CardinalityProfile {
    let mut values: Vec<f64> = (1..=n).map(|i| i as f64).collect();
    values[n - 1] += 10.0;
    CardinalityProfile::new(values).unwrap()
}

/// Uniform random subset of exactly `size` elements.
pub fn random_subset_of_size(rng: &mut Rng, n: usize, size: usize) -> Subset {
    let mut pool: Vec<usize> = (0..n).collect();
    rng.sample_prefix(&mut pool, size);
    Subset::from_members(n, &pool[..size]).unwrap()
}

/// Independent exhaustive optimum: plain recursion over ascending tuples,
/// strict improvement, no bitsets, no ranking arithmetic. Used to cross-check
/// the oracle on small instances.
pub fn best_of_size_naive<F: SetFunction>(f: &F, k: usize) -> (Vec<usize>, f64) {
    fn rec<F: SetFunction>(
        f: &F,
        n: usize,
        k: usize,
        start: usize,
        current: &mut Vec<usize>,
        best: &mut Option<(Vec<usize>, f64)>,
    ) {
        if current.len() == k {
            let value = f
                .evaluate(&Subset::from_members(n, current).unwrap())
                .unwrap();
            if best.as_ref().is_none_or(|(_, b)| value > *b) {
                *best = Some((current.clone(), value));
            }
            return;
        }
        let needed = k - current.len();
        for v in start..=n - needed {
            current.push(v);
            rec(f, n, k, v + 1, current, best);
            current.pop();
        }
    }
    let n = f.ground_size();
    let mut best = None;
    rec(f, n, k, 0, &mut Vec::new(), &mut best);
    best.expect("k <= n yields at least one candidate")
}

/// All permutations of `items`, in a deterministic order.
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    fn rec(remaining: &mut Vec<usize>, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining.is_empty() {
            out.push(current.clone());
            return;
        }
        for i in 0..remaining.len() {
            let item = remaining.remove(i);
            current.push(item);
            rec(remaining, current, out);
            current.pop();
            remaining.insert(i, item);
        }
    }
    let mut out = Vec::new();
    rec(&mut items.to_vec(), &mut Vec::new(), &mut out);
    out
}
