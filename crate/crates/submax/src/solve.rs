//! Cardinality-constrained maximizers.
//!
//! All three solvers share the same tie-break: among equal gains, the
//! smallest element index wins. That single rule is what makes the lazy
//! variant provably select the same sequence as the standard greedy, and
//! stochastic runs comparable across seeds. Gain comparisons are exact
//! (no tolerance band): two gains that differ only in the last bit are
//! different gains, in every solver, identically.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::Error;
use crate::function::SetFunction;
use crate::oracle::OracleResult;
use crate::rng::{trial_seed, Rng};
use crate::set::Subset;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Greedy,
    LazyGreedy,
    StochasticGreedy,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Greedy => "greedy",
            Algorithm::LazyGreedy => "lazy",
            Algorithm::StochasticGreedy => "stochastic",
        }
    }
}

/// One accepted element: `step` is 1-based, `gain` is the marginal gain at
/// acceptance time, `objective` the resulting `f(S_step)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Step {
    pub step: usize,
    pub element: usize,
    pub gain: f64,
    pub objective: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub algorithm: Algorithm,
    pub selected: Subset,
    pub trace: Vec<Step>,
    /// Underlying evaluations of `f` on non-empty subsets. Each gain query
    /// costs exactly one: the base value `f(S_{l-1})` is carried over from
    /// the step that produced it, never re-evaluated.
    pub evaluations: u64,
    pub seed: Option<u64>,
    pub sample_size: Option<usize>,
}

impl SolveResult {
    /// Elements in pick order.
    pub fn order(&self) -> Vec<usize> {
        self.trace.iter().map(|s| s.element).collect()
    }

    /// Final objective `f(S_k)`.
    pub fn objective(&self) -> f64 {
        self.trace.last().map_or(0.0, |s| s.objective)
    }
}

fn validate_k(n: usize, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::KZero);
    }
    if k > n {
        return Err(Error::KExceedsGroundSet { k, n });
    }
    Ok(())
}

/// Standard greedy: per step, evaluate every remaining candidate and take
/// the best. Exactly `n + (n-1) + .. + (n-k+1)` evaluations.
pub fn greedy<F: SetFunction>(f: &F, k: usize) -> Result<SolveResult> {
    let n = f.ground_size();
    validate_k(n, k)?;
    let mut selected = Subset::empty(n);
    let mut trace = Vec::with_capacity(k);
    let mut evaluations = 0u64;
    let mut base = 0.0;
    for step in 1..=k {
        // Ascending scan + strict improvement keeps the smallest index
        // among tied gains.
        let mut best: Option<(f64, usize, f64)> = None;
        for v in 0..n {
            if selected.contains(v) {
                continue;
            }
            let value = f.evaluate(&selected.with(v)?)?;
            evaluations += 1;
            let gain = value - base;
            if best.is_none_or(|(g, _, _)| gain > g) {
                best = Some((gain, v, value));
            }
        }
        let (gain, element, value) = best.expect("k <= n leaves candidates");
        selected.insert(element)?;
        base = value;
        trace.push(Step {
            step,
            element,
            gain,
            objective: value,
        });
    }
    Ok(SolveResult {
        algorithm: Algorithm::Greedy,
        selected,
        trace,
        evaluations,
        seed: None,
        sample_size: None,
    })
}

/// Max-heap entry: cached gain, element, the step at which the gain was
/// computed, and the full objective value behind the gain (so accepting an
/// entry costs no extra evaluation).
#[derive(Debug, Clone)]
struct QueueEntry {
    rho: f64,
    element: usize,
    stamp: usize,
    value: f64,
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.rho == other.rho && self.element == other.element
    }
}

impl Eq for QueueEntry {}

impl Ord for QueueEntry {
    /// Gain descending, element index ascending. Gains are finite by the
    /// evaluation contract.
    fn cmp(&self, other: &Self) -> Ordering {
        self.rho
            .partial_cmp(&other.rho)
            .expect("gains are finite")
            .then_with(|| other.element.cmp(&self.element))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lazy greedy. Cached gains from earlier steps are upper bounds on current
/// gains when `f` is submodular, so the top of the queue can often be
/// accepted after recomputing only its own gain.
///
/// Acceptance compares the recomputed entry against the queue's best REMAINING
/// entry in full queue order (gain descending, then index ascending), not by
/// gain alone. The index clause matters: when a recomputed gain exactly ties a
/// stale cached gain of a smaller-index element, gain-only acceptance would
/// take the recomputed element, while the standard greedy, seeing true gains,
/// would take the smaller index. Queue-order acceptance forces a recompute of
/// the smaller-index entry instead, keeping the selected sequences identical
/// on every input where the pruning premise holds.
///
/// On non-submodular `f` the result is still a valid size-`k` set with an
/// honest trace, but it may differ from standard greedy; no runtime check is
/// performed.
pub fn lazy_greedy<F: SetFunction>(f: &F, k: usize) -> Result<SolveResult> {
    let n = f.ground_size();
    validate_k(n, k)?;
    let mut heap = BinaryHeap::with_capacity(n);
    let mut evaluations = 0u64;
    // Step 1 evaluates every singleton, same as standard greedy.
    for element in 0..n {
        let value = f.evaluate(&Subset::from_members(n, &[element])?)?;
        evaluations += 1;
        heap.push(QueueEntry {
            rho: value,
            element,
            stamp: 1,
            value,
        });
    }
    let mut selected = Subset::empty(n);
    let mut trace = Vec::with_capacity(k);
    let mut base = 0.0;
    for step in 1..=k {
        loop {
            let top = heap.pop().expect("k <= n leaves candidates");
            if top.stamp == step {
                // Computed against the current base; exact, accept.
                selected.insert(top.element)?;
                base = top.value;
                trace.push(Step {
                    step,
                    element: top.element,
                    gain: top.rho,
                    objective: top.value,
                });
                break;
            }
            let value = f.evaluate(&selected.with(top.element)?)?;
            evaluations += 1;
            let fresh = QueueEntry {
                rho: value - base,
                element: top.element,
                stamp: step,
                value,
            };
            match heap.peek() {
                Some(next) if fresh < *next => heap.push(fresh),
                _ => {
                    selected.insert(fresh.element)?;
                    base = fresh.value;
                    trace.push(Step {
                        step,
                        element: fresh.element,
                        gain: fresh.rho,
                        objective: fresh.value,
                    });
                    break;
                }
            }
        }
    }
    Ok(SolveResult {
        algorithm: Algorithm::LazyGreedy,
        selected,
        trace,
        evaluations,
        seed: None,
        sample_size: None,
    })
}

/// How the per-step sample size is chosen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SampleSpec {
    /// Derive via [`sample_size`] from the accuracy target.
    Epsilon(f64),
    /// Explicit size, clamped per step to the remaining pool.
    Size(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StochasticConfig {
    pub sample: SampleSpec,
    pub seed: u64,
}

/// `max(1, ⌈(n/k)·ln(1/ε)⌉)`: the per-step sample size that yields a
/// `(1 − 1/e − ε)` expected-value guarantee.
pub fn sample_size(n: usize, k: usize, epsilon: f64) -> Result<usize> {
    validate_k(n, k)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::InvalidEpsilon { value: epsilon });
    }
    let s = (n as f64 / k as f64) * (1.0 / epsilon).ln();
    Ok((s.ceil() as usize).max(1))
}

/// Stochastic greedy: per step, draw `min(s, remaining)` candidates without
/// replacement and take the best of the sample. Deterministic for a fixed
/// `(seed, f, k, s)`.
pub fn stochastic_greedy<F: SetFunction>(
    f: &F,
    k: usize,
    cfg: &StochasticConfig,
) -> Result<SolveResult> {
    let n = f.ground_size();
    validate_k(n, k)?;
    let s = match cfg.sample {
        SampleSpec::Epsilon(e) => sample_size(n, k, e)?,
        SampleSpec::Size(0) => return Err(Error::ZeroSampleSize),
        SampleSpec::Size(s) => s,
    };
    let mut rng = Rng::from_seed(cfg.seed);
    let mut pool: Vec<usize> = (0..n).collect();
    let mut selected = Subset::empty(n);
    let mut trace = Vec::with_capacity(k);
    let mut evaluations = 0u64;
    let mut base = 0.0;
    for step in 1..=k {
        let t = s.min(pool.len());
        rng.sample_prefix(&mut pool, t);
        // Tie-break on the element index, not the sample position, so the
        // choice does not depend on the order the sampler produced.
        let mut best: Option<(f64, usize, f64, usize)> = None;
        for (pos, &v) in pool[..t].iter().enumerate() {
            let value = f.evaluate(&selected.with(v)?)?;
            evaluations += 1;
            let gain = value - base;
            let better = match best {
                None => true,
                Some((g, e, _, _)) => gain > g || (gain == g && v < e),
            };
            if better {
                best = Some((gain, v, value, pos));
            }
        }
        let (gain, element, value, pos) = best.expect("sample is non-empty");
        pool.swap_remove(pos);
        selected.insert(element)?;
        base = value;
        trace.push(Step {
            step,
            element,
            gain,
            objective: value,
        });
    }
    Ok(SolveResult {
        algorithm: Algorithm::StochasticGreedy,
        selected,
        trace,
        evaluations,
        seed: Some(cfg.seed),
        sample_size: Some(s),
    })
}

/// Optimality-gap sequence of a solve against the exact optimum:
/// `deltas[l] = OPT − f(S_l)` for `l = 0..k`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapDiagnostic {
    pub deltas: Vec<f64>,
    /// `deltas[l+1] / deltas[l]`, `None` where the gap is already 0.
    pub ratios: Vec<Option<f64>>,
    /// Whether every step satisfied `δ_{l+1} ≤ (1 − 1/k)·δ_l + 1e-9`, the
    /// per-step contraction the greedy guarantee is built from. Expected to
    /// hold for standard greedy on monotone submodular instances; other
    /// algorithms may violate it.
    pub contraction_holds: bool,
}

/// Absolute slack in the contraction test.
pub const GAP_TOLERANCE: f64 = 1e-9;

pub fn gap_diagnostic(result: &SolveResult, oracle: &OracleResult) -> Result<GapDiagnostic> {
    let k = result.trace.len();
    if oracle.best_set.len() != k {
        return Err(Error::KMismatch {
            result_k: k,
            oracle_k: oracle.best_set.len(),
        });
    }
    let opt = oracle.best_value;
    let mut deltas = Vec::with_capacity(k + 1);
    deltas.push(opt);
    for step in &result.trace {
        deltas.push(opt - step.objective);
    }
    let factor = 1.0 - 1.0 / k as f64;
    let mut ratios = Vec::with_capacity(k);
    let mut contraction_holds = true;
    for l in 0..k {
        ratios.push(if deltas[l] > 0.0 {
            Some(deltas[l + 1] / deltas[l])
        } else {
            None
        });
        if deltas[l + 1] > factor * deltas[l] + GAP_TOLERANCE {
            contraction_holds = false;
        }
    }
    Ok(GapDiagnostic {
        deltas,
        ratios,
        contraction_holds,
    })
}

/// Repeated stochastic runs with per-trial seeds derived from `base_seed`.
/// Trial `t` always gets the same stream regardless of how many trials run
/// or in what order; the result vector is indexed by trial.
pub fn stochastic_trials<F: SetFunction + Sync>(
    f: &F,
    k: usize,
    sample: SampleSpec,
    base_seed: u64,
    trials: u64,
) -> Result<Vec<SolveResult>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..trials)
            .into_par_iter()
            .map(|t| {
                stochastic_greedy(
                    f,
                    k,
                    &StochasticConfig {
                        sample,
                        seed: trial_seed(base_seed, t),
                    },
                )
            })
            .collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        stochastic_trials_seq(f, k, sample, base_seed, trials)
    }
}

/// Single-threaded trial sweep; same results as [`stochastic_trials`].
pub fn stochastic_trials_seq<F: SetFunction>(
    f: &F,
    k: usize,
    sample: SampleSpec,
    base_seed: u64,
    trials: u64,
) -> Result<Vec<SolveResult>> {
    (0..trials)
        .map(|t| {
            stochastic_greedy(
                f,
                k,
                &StochasticConfig {
                    sample,
                    seed: trial_seed(base_seed, t),
                },
            )
        })
        .collect()
}
