//! Property verification: monotonicity, submodularity (two equivalent
//! characterizations), and the telescoping-sum identity.
//!
//! Exhaustive mode precomputes the full value table `f(A)` for all `2^n`
//! subsets, then scans every qualifying tuple. The scan never stops at the
//! first violation: it keeps the MOST violating witness, breaking magnitude
//! ties toward the lexicographically smallest `(A, B, v)`. That rule makes
//! the report independent of enumeration order, so the parallel scans merge
//! to bit-identical results.
//!
//! Sampled mode draws tuples from a seeded generator instead; it is the
//! fallback when `2^n` tables are out of reach and is reproducible per seed.

use std::cmp::Ordering;

use crate::error::Error;
use crate::function::SetFunction;
use crate::rng::Rng;
use crate::set::Subset;
use crate::Result;

/// Largest `n` the exhaustive monotonicity scan accepts (`n·2^(n-1)` checks).
pub const MONOTONE_EXHAUSTIVE_MAX: usize = 20;
/// Largest `n` for the exhaustive diminishing-returns scan (`n·3^(n-1)`).
pub const DERIVATIVE_EXHAUSTIVE_MAX: usize = 14;
/// Largest `n` for the exhaustive intersection-union scan (`(4^n+2^n)/2`).
pub const INTERSECTION_EXHAUSTIVE_MAX: usize = 12;

/// Relative violation tolerance. A comparison `lhs ≥ rhs` only counts as
/// violated when `rhs - lhs > TOLERANCE * max(1, |lhs|, |rhs|)`; sums of
/// maxima accumulate rounding, and an exact-zero threshold would flag it.
pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled { budget: u64, seed: u64 },
}

/// Counterexample to a property, with the two sides of the violated
/// inequality as evaluated and the violation size `rhs - lhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub a: Subset,
    pub b: Option<Subset>,
    pub v: Option<usize>,
    pub lhs: f64,
    pub rhs: f64,
    pub magnitude: f64,
}

impl Witness {
    fn key_cmp(&self, other: &Witness) -> Ordering {
        self.a
            .cmp(&other.a)
            .then_with(|| match (&self.b, &other.b) {
                (None, None) => Ordering::Equal,
                (Some(x), Some(y)) => x.cmp(y),
                (None, Some(_)) => Ordering::Less,
                (Some(_), None) => Ordering::Greater,
            })
            .then_with(|| self.v.cmp(&other.v))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub pairs_checked: u64,
}

impl PropertyReport {
    fn from_scan(pairs_checked: u64, best: BestWitness) -> Self {
        let witness = best.0;
        PropertyReport {
            holds: witness.is_none(),
            witness,
            pairs_checked,
        }
    }
}

/// `Some(defect)` when `lhs ≥ rhs` fails beyond the relative tolerance.
fn violation(lhs: f64, rhs: f64) -> Option<f64> {
    let scale = 1.0_f64.max(lhs.abs()).max(rhs.abs());
    let defect = rhs - lhs;
    if defect > TOLERANCE * scale {
        Some(defect)
    } else {
        None
    }
}

/// Running "worst witness" under (magnitude desc, key asc). Merging two
/// accumulators is associative and commutative, which is what lets the
/// parallel scans produce the same witness as the sequential ones.
#[derive(Debug, Default)]
struct BestWitness(Option<Witness>);

impl BestWitness {
    fn offer(&mut self, w: Witness) {
        let replace = match &self.0 {
            None => true,
            Some(cur) => {
                w.magnitude > cur.magnitude
                    || (w.magnitude == cur.magnitude && w.key_cmp(cur) == Ordering::Less)
            }
        };
        if replace {
            self.0 = Some(w);
        }
    }

    fn merge(mut self, other: BestWitness) -> BestWitness {
        if let Some(w) = other.0 {
            self.offer(w);
        }
        self
    }
}

fn checked_count(parts: &[u128]) -> String {
    let mut acc: u128 = 1;
    for &p in parts {
        match acc.checked_mul(p) {
            Some(v) => acc = v,
            None => return "more than 2^128".to_string(),
        }
    }
    acc.to_string()
}

fn exhaustive_limit(checker: &'static str, n: usize, max: usize) -> Error {
    let limit = match checker {
        "monotone" => checked_count(&[n as u128, 1u128 << (n - 1).min(127)]),
        "submodular-derivative" => {
            let mut pow = 1u128;
            let mut overflow = false;
            for _ in 0..n - 1 {
                match pow.checked_mul(3) {
                    Some(v) => pow = v,
                    None => {
                        overflow = true;
                        break;
                    }
                }
            }
            if overflow {
                "more than 2^128".to_string()
            } else {
                checked_count(&[n as u128, pow])
            }
        }
        _ => {
            if 2 * n >= 127 {
                "more than 2^126".to_string()
            } else {
                ((1u128 << (2 * n)) + (1u128 << n)).div_euclid(2).to_string()
            }
        }
    };
    Error::ExhaustiveLimit {
        checker,
        n,
        max,
        limit,
    }
}

/// `f(A)` for every mask in `0..2^n`, index = membership bitmask.
fn value_table_seq<F: SetFunction>(f: &F, n: usize) -> Result<Vec<f64>> {
    (0..1u64 << n)
        .map(|mask| f.evaluate(&Subset::from_mask(n, mask)?))
        .collect()
}

#[cfg(feature = "parallel")]
fn value_table_par<F: SetFunction + Sync>(f: &F, n: usize) -> Result<Vec<f64>> {
    use rayon::prelude::*;
    (0..1u64 << n)
        .into_par_iter()
        .map(|mask| f.evaluate(&Subset::from_mask(n, mask)?))
        .collect()
}

// ---------------------------------------------------------------------------
// Monotonicity: f(A ∪ {v}) ≥ f(A) for every A and v ∉ A.

fn monotone_scan_element(table: &[f64], n: usize, v: usize) -> BestWitness {
    let mut best = BestWitness::default();
    let bit = 1u64 << v;
    let low_mask = bit - 1;
    for compact in 0..1u64 << (n - 1) {
        // Insert a zero bit at position v to enumerate exactly the masks
        // that do not contain v.
        let mask = ((compact & !low_mask) << 1) | (compact & low_mask);
        let lhs = table[(mask | bit) as usize];
        let rhs = table[mask as usize];
        if let Some(magnitude) = violation(lhs, rhs) {
            best.offer(Witness {
                a: Subset::from_mask(n, mask).expect("mask within universe"),
                b: None,
                v: Some(v),
                lhs,
                rhs,
                magnitude,
            });
        }
    }
    best
}

fn monotone_pairs(n: usize) -> u64 {
    n as u64 * (1u64 << (n - 1))
}

/// Exhaustive monotonicity check on one thread.
pub fn check_monotone_exhaustive_seq<F: SetFunction>(f: &F) -> Result<PropertyReport> {
    let n = f.ground_size();
    if n > MONOTONE_EXHAUSTIVE_MAX {
        return Err(exhaustive_limit("monotone", n, MONOTONE_EXHAUSTIVE_MAX));
    }
    let table = value_table_seq(f, n)?;
    let mut best = BestWitness::default();
    for v in 0..n {
        best = best.merge(monotone_scan_element(&table, n, v));
    }
    Ok(PropertyReport::from_scan(monotone_pairs(n), best))
}

/// Exhaustive monotonicity check, element scans fanned out across threads.
#[cfg(feature = "parallel")]
pub fn check_monotone_exhaustive_par<F: SetFunction + Sync>(f: &F) -> Result<PropertyReport> {
    use rayon::prelude::*;
    let n = f.ground_size();
    if n > MONOTONE_EXHAUSTIVE_MAX {
        return Err(exhaustive_limit("monotone", n, MONOTONE_EXHAUSTIVE_MAX));
    }
    let table = value_table_par(f, n)?;
    let best = (0..n)
        .into_par_iter()
        .map(|v| monotone_scan_element(&table, n, v))
        .reduce(BestWitness::default, BestWitness::merge);
    Ok(PropertyReport::from_scan(monotone_pairs(n), best))
}

pub fn check_monotone<F: SetFunction + Sync>(f: &F, mode: CheckMode) -> Result<PropertyReport> {
    match mode {
        CheckMode::Exhaustive => {
            #[cfg(feature = "parallel")]
            {
                check_monotone_exhaustive_par(f)
            }
            #[cfg(not(feature = "parallel"))]
            {
                check_monotone_exhaustive_seq(f)
            }
        }
        CheckMode::Sampled { budget, seed } => check_monotone_sampled(f, budget, seed),
    }
}

fn random_subset(rng: &mut Rng, n: usize) -> Subset {
    let mut s = Subset::empty(n);
    let mut v = 0;
    while v < n {
        let bits = rng.next_u64();
        let take = 64.min(n - v);
        for i in 0..take {
            if bits >> i & 1 == 1 {
                s.insert(v + i).expect("element within universe");
            }
        }
        v += take;
    }
    s
}

/// `index`-th smallest element outside `s`.
fn complement_member(s: &Subset, index: usize) -> usize {
    let n = s.universe_size();
    let mut seen = 0;
    for v in 0..n {
        if !s.contains(v) {
            if seen == index {
                return v;
            }
            seen += 1;
        }
    }
    unreachable!("index within complement size");
}

fn check_monotone_sampled<F: SetFunction>(f: &F, budget: u64, seed: u64) -> Result<PropertyReport> {
    let n = f.ground_size();
    let mut rng = Rng::from_seed(seed);
    let mut best = BestWitness::default();
    for _ in 0..budget {
        let a = loop {
            let a = random_subset(&mut rng, n);
            if a.len() < n {
                break a;
            }
        };
        let v = complement_member(&a, rng.below(n - a.len()));
        let lhs = f.evaluate(&a.with(v)?)?;
        let rhs = f.evaluate(&a)?;
        if let Some(magnitude) = violation(lhs, rhs) {
            best.offer(Witness {
                a,
                b: None,
                v: Some(v),
                lhs,
                rhs,
                magnitude,
            });
        }
    }
    Ok(PropertyReport::from_scan(budget, best))
}

// ---------------------------------------------------------------------------
// Submodularity, derivative form: Δ(v|A) ≥ Δ(v|B) for all A ⊆ B, v ∉ B.

fn derivative_scan_element(table: &[f64], n: usize, v: usize) -> BestWitness {
    let mut best = BestWitness::default();
    let bit_v = 1u64 << v;
    let elems: Vec<usize> = (0..n).filter(|&e| e != v).collect();
    // Ternary state per non-v element: 0 = outside both, 1 = in B only,
    // 2 = in both A and B. Counting through all 3^(n-1) states visits every
    // chain A ⊆ B ⊆ V∖{v} exactly once.
    let mut trits = vec![0u8; elems.len()];
    let mut mask_a = 0u64;
    let mut mask_b = 0u64;
    loop {
        let lhs = table[(mask_a | bit_v) as usize] - table[mask_a as usize];
        let rhs = table[(mask_b | bit_v) as usize] - table[mask_b as usize];
        if let Some(magnitude) = violation(lhs, rhs) {
            best.offer(Witness {
                a: Subset::from_mask(n, mask_a).expect("mask within universe"),
                b: Some(Subset::from_mask(n, mask_b).expect("mask within universe")),
                v: Some(v),
                lhs,
                rhs,
                magnitude,
            });
        }
        let mut i = 0;
        loop {
            if i == elems.len() {
                return best;
            }
            let bit = 1u64 << elems[i];
            match trits[i] {
                0 => {
                    trits[i] = 1;
                    mask_b |= bit;
                    break;
                }
                1 => {
                    trits[i] = 2;
                    mask_a |= bit;
                    break;
                }
                _ => {
                    trits[i] = 0;
                    mask_a &= !bit;
                    mask_b &= !bit;
                    i += 1;
                }
            }
        }
    }
}

fn derivative_pairs(n: usize) -> u64 {
    n as u64 * 3u64.pow(n as u32 - 1)
}

/// Exhaustive diminishing-returns check on one thread.
pub fn check_submodular_derivative_exhaustive_seq<F: SetFunction>(
    f: &F,
) -> Result<PropertyReport> {
    let n = f.ground_size();
    if n > DERIVATIVE_EXHAUSTIVE_MAX {
        return Err(exhaustive_limit(
            "submodular-derivative",
            n,
            DERIVATIVE_EXHAUSTIVE_MAX,
        ));
    }
    let table = value_table_seq(f, n)?;
    let mut best = BestWitness::default();
    for v in 0..n {
        best = best.merge(derivative_scan_element(&table, n, v));
    }
    Ok(PropertyReport::from_scan(derivative_pairs(n), best))
}

/// Exhaustive diminishing-returns check across threads.
#[cfg(feature = "parallel")]
pub fn check_submodular_derivative_exhaustive_par<F: SetFunction + Sync>(
    f: &F,
) -> Result<PropertyReport> {
    use rayon::prelude::*;
    let n = f.ground_size();
    if n > DERIVATIVE_EXHAUSTIVE_MAX {
        return Err(exhaustive_limit(
            "submodular-derivative",
            n,
            DERIVATIVE_EXHAUSTIVE_MAX,
        ));
    }
    let table = value_table_par(f, n)?;
    let best = (0..n)
        .into_par_iter()
        .map(|v| derivative_scan_element(&table, n, v))
        .reduce(BestWitness::default, BestWitness::merge);
    Ok(PropertyReport::from_scan(derivative_pairs(n), best))
}

pub fn check_submodular_derivative<F: SetFunction + Sync>(
    f: &F,
    mode: CheckMode,
) -> Result<PropertyReport> {
    match mode {
        CheckMode::Exhaustive => {
            #[cfg(feature = "parallel")]
            {
                check_submodular_derivative_exhaustive_par(f)
            }
            #[cfg(not(feature = "parallel"))]
            {
                check_submodular_derivative_exhaustive_seq(f)
            }
        }
        CheckMode::Sampled { budget, seed } => check_submodular_derivative_sampled(f, budget, seed),
    }
}

fn check_submodular_derivative_sampled<F: SetFunction>(
    f: &F,
    budget: u64,
    seed: u64,
) -> Result<PropertyReport> {
    let n = f.ground_size();
    let mut rng = Rng::from_seed(seed);
    let mut best = BestWitness::default();
    for _ in 0..budget {
        let b = loop {
            let b = random_subset(&mut rng, n);
            if b.len() < n {
                break b;
            }
        };
        let v = complement_member(&b, rng.below(n - b.len()));
        let mut a = Subset::empty(n);
        for member in b.members() {
            if rng.below(2) == 1 {
                a.insert(member)?;
            }
        }
        let lhs = f.evaluate(&a.with(v)?)? - f.evaluate(&a)?;
        let rhs = f.evaluate(&b.with(v)?)? - f.evaluate(&b)?;
        if let Some(magnitude) = violation(lhs, rhs) {
            best.offer(Witness {
                a,
                b: Some(b),
                v: Some(v),
                lhs,
                rhs,
                magnitude,
            });
        }
    }
    Ok(PropertyReport::from_scan(budget, best))
}

// ---------------------------------------------------------------------------
// Submodularity, intersection-union form:
// f(A) + f(B) ≥ f(A ∩ B) + f(A ∪ B) for all pairs.

fn intersection_offer(table: &[f64], n: usize, a: u64, b: u64, best: &mut BestWitness) {
    let lhs = table[a as usize] + table[b as usize];
    let rhs = table[(a & b) as usize] + table[(a | b) as usize];
    if let Some(magnitude) = violation(lhs, rhs) {
        let sa = Subset::from_mask(n, a).expect("mask within universe");
        let sb = Subset::from_mask(n, b).expect("mask within universe");
        // The pair is unordered; report it with the lex-smaller set first.
        let (sa, sb) = if sa <= sb { (sa, sb) } else { (sb, sa) };
        best.offer(Witness {
            a: sa,
            b: Some(sb),
            v: None,
            lhs,
            rhs,
            magnitude,
        });
    }
}

fn intersection_scan_range(table: &[f64], n: usize, a_range: std::ops::Range<u64>) -> BestWitness {
    let size = 1u64 << n;
    let mut best = BestWitness::default();
    for a in a_range {
        for b in a..size {
            intersection_offer(table, n, a, b, &mut best);
        }
    }
    best
}

fn intersection_pairs(n: usize) -> u64 {
    let size = 1u64 << n;
    size * (size + 1) / 2
}

/// Exhaustive intersection-union check on one thread.
pub fn check_submodular_intersection_exhaustive_seq<F: SetFunction>(
    f: &F,
) -> Result<PropertyReport> {
    let n = f.ground_size();
    if n > INTERSECTION_EXHAUSTIVE_MAX {
        return Err(exhaustive_limit(
            "submodular-intersection",
            n,
            INTERSECTION_EXHAUSTIVE_MAX,
        ));
    }
    let table = value_table_seq(f, n)?;
    let best = intersection_scan_range(&table, n, 0..1u64 << n);
    Ok(PropertyReport::from_scan(intersection_pairs(n), best))
}

/// Exhaustive intersection-union check across threads.
#[cfg(feature = "parallel")]
pub fn check_submodular_intersection_exhaustive_par<F: SetFunction + Sync>(
    f: &F,
) -> Result<PropertyReport> {
    use rayon::prelude::*;
    let n = f.ground_size();
    if n > INTERSECTION_EXHAUSTIVE_MAX {
        return Err(exhaustive_limit(
            "submodular-intersection",
            n,
            INTERSECTION_EXHAUSTIVE_MAX,
        ));
    }
    let table = value_table_par(f, n)?;
    let size = 1u64 << n;
    let chunk = 64u64;
    let best = (0..size)
        .step_by(chunk as usize)
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|start| intersection_scan_range(&table, n, start..size.min(start + chunk)))
        .reduce(BestWitness::default, BestWitness::merge);
    Ok(PropertyReport::from_scan(intersection_pairs(n), best))
}

pub fn check_submodular_intersection<F: SetFunction + Sync>(
    f: &F,
    mode: CheckMode,
) -> Result<PropertyReport> {
    match mode {
        CheckMode::Exhaustive => {
            #[cfg(feature = "parallel")]
            {
                check_submodular_intersection_exhaustive_par(f)
            }
            #[cfg(not(feature = "parallel"))]
            {
                check_submodular_intersection_exhaustive_seq(f)
            }
        }
        CheckMode::Sampled { budget, seed } => {
            check_submodular_intersection_sampled(f, budget, seed)
        }
    }
}

fn check_submodular_intersection_sampled<F: SetFunction>(
    f: &F,
    budget: u64,
    seed: u64,
) -> Result<PropertyReport> {
    let n = f.ground_size();
    let mut rng = Rng::from_seed(seed);
    let mut best = BestWitness::default();
    for _ in 0..budget {
        let a = random_subset(&mut rng, n);
        let b = random_subset(&mut rng, n);
        let lhs = f.evaluate(&a)? + f.evaluate(&b)?;
        let rhs = f.evaluate(&a.intersection(&b))? + f.evaluate(&a.union(&b))?;
        if let Some(magnitude) = violation(lhs, rhs) {
            let (a, b) = if a <= b { (a, b) } else { (b, a) };
            best.offer(Witness {
                a,
                b: Some(b),
                v: None,
                lhs,
                rhs,
                magnitude,
            });
        }
    }
    Ok(PropertyReport::from_scan(budget, best))
}

// ---------------------------------------------------------------------------
// Telescoping sum: f(A ∪ H) = f(A) + Σ_j Δ(v_j | A ∪ {v_1..v_{j-1}}).

#[derive(Debug, Clone, PartialEq)]
pub struct TelescopingReport {
    /// `|f(A ∪ H) − f(A) − Σ_j Δ(v_j | ..)|`.
    pub residual: f64,
    /// Scale for tolerance decisions: `max(1, |f(A∪H)|, |f(A)| + Σ|Δ_j|)`.
    pub scale: f64,
    /// Members of `H` that were already in `A`; the union absorbs them, so
    /// they are dropped from the sum rather than counted as zero-gain steps.
    pub absorbed: Vec<usize>,
}

pub fn check_telescoping<F: SetFunction>(
    f: &F,
    a: &Subset,
    h: &[usize],
) -> Result<TelescopingReport> {
    let mut seen = Subset::empty(f.ground_size().max(h.iter().copied().max().map_or(0, |m| m + 1)));
    for &v in h {
        if !seen.insert(v)? {
            return Err(Error::DuplicateElement { element: v });
        }
    }
    let base = f.evaluate(a)?;
    let mut current = a.clone();
    let mut sum = 0.0;
    let mut abs_sum = 0.0;
    let mut absorbed = Vec::new();
    for &v in h {
        if current.contains(v) {
            absorbed.push(v);
            continue;
        }
        let gain = f.marginal_gain(&current, v)?;
        sum += gain;
        abs_sum += gain.abs();
        current.insert(v)?;
    }
    let total = f.evaluate(&current)?;
    Ok(TelescopingReport {
        residual: (total - base - sum).abs(),
        scale: 1.0_f64.max(total.abs()).max(base.abs() + abs_sum),
        absorbed,
    })
}
