//! The set-function evaluation contract.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::Error;
use crate::set::Subset;
use crate::Result;

/// A real-valued function on subsets of `{0, .., n-1}` with `f(∅) = 0`.
///
/// Implementors provide [`SetFunction::eval_raw`] for non-empty subsets only;
/// the empty-set value is part of the contract and is supplied by
/// [`SetFunction::evaluate`] without consulting the implementation.
/// Evaluation must be pure: same subset, same value, no observable state
/// change apart from counters layered on top.
pub trait SetFunction {
    fn ground_size(&self) -> usize;

    /// Value of a non-empty subset. Callers must go through
    /// [`SetFunction::evaluate`], which validates the domain first.
    fn eval_raw(&self, a: &Subset) -> f64;

    fn evaluate(&self, a: &Subset) -> Result<f64> {
        check_domain(self.ground_size(), a)?;
        if a.is_empty() {
            return Ok(0.0);
        }
        Ok(self.eval_raw(a))
    }

    /// `f(A ∪ {v}) − f(A)`. When `v ∈ A` the union is a no-op and the gain
    /// is exactly 0, returned without evaluating anything.
    fn marginal_gain(&self, a: &Subset, v: usize) -> Result<f64> {
        let n = self.ground_size();
        if v >= n {
            return Err(Error::IndexOutOfRange { index: v, n });
        }
        check_domain(n, a)?;
        if a.contains(v) {
            return Ok(0.0);
        }
        let with = a.with(v)?;
        let base = if a.is_empty() { 0.0 } else { self.eval_raw(a) };
        Ok(self.eval_raw(&with) - base)
    }
}

fn check_domain(n: usize, a: &Subset) -> Result<()> {
    if a.universe_size() <= n {
        return Ok(());
    }
    if let Some(index) = a.members().find(|&v| v >= n) {
        return Err(Error::IndexOutOfRange { index, n });
    }
    Ok(())
}

impl<F: SetFunction + ?Sized> SetFunction for &F {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn eval_raw(&self, a: &Subset) -> f64 {
        (**self).eval_raw(a)
    }
}

/// Value-transparent wrapper tallying underlying evaluations.
///
/// Only calls that reach the inner implementation tick the counter, so
/// `evaluate(∅)` is free, matching the convention that the empty set costs
/// nothing. The counter is atomic, which lets parallel drivers share one
/// wrapper; merging per-worker counts also works and is what the sequential
/// paths assume.
pub struct Counting<F> {
    inner: F,
    count: AtomicU64,
}

impl<F: SetFunction> Counting<F> {
    pub fn new(inner: F) -> Self {
        Counting {
            inner,
            count: AtomicU64::new(0),
        }
    }

    pub fn count(&self) -> u64 {
        self.count.load(Ordering::Relaxed)
    }

    pub fn reset(&self) {
        self.count.store(0, Ordering::Relaxed);
    }

    pub fn get_ref(&self) -> &F {
        &self.inner
    }

    pub fn into_inner(self) -> F {
        self.inner
    }
}

impl<F: SetFunction> SetFunction for Counting<F> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn eval_raw(&self, a: &Subset) -> f64 {
        self.count.fetch_add(1, Ordering::Relaxed);
        self.inner.eval_raw(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// f(A) = Σ_{v∈A} (v+1)², small enough to reason about by hand.
    struct SquareWeights {
        n: usize,
    }

    impl SetFunction for SquareWeights {
        fn ground_size(&self) -> usize {
            self.n
        }

        fn eval_raw(&self, a: &Subset) -> f64 {
            a.members().map(|v| ((v + 1) * (v + 1)) as f64).sum()
        }
    }

    #[test]
    fn empty_set_is_zero_without_inner_call() {
        let f = Counting::new(SquareWeights { n: 4 });
        assert_eq!(f.evaluate(&Subset::empty(4)).unwrap(), 0.0);
        assert_eq!(f.count(), 0);
    }

    #[test]
    fn counting_is_value_transparent() {
        let plain = SquareWeights { n: 5 };
        let counted = Counting::new(SquareWeights { n: 5 });
        for mask in 0u64..32 {
            let a = Subset::from_mask(5, mask).unwrap();
            assert_eq!(
                plain.evaluate(&a).unwrap().to_bits(),
                counted.evaluate(&a).unwrap().to_bits()
            );
        }
        assert_eq!(counted.count(), 31);
        counted.reset();
        assert_eq!(counted.count(), 0);
    }

    #[test]
    fn marginal_gain_matches_difference_exactly() {
        let f = SquareWeights { n: 6 };
        for mask in 0u64..64 {
            let a = Subset::from_mask(6, mask).unwrap();
            for v in 0..6 {
                let gain = f.marginal_gain(&a, v).unwrap();
                let diff =
                    f.evaluate(&a.with(v).unwrap_or_else(|_| a.clone())).unwrap()
                        - f.evaluate(&a).unwrap();
                if a.contains(v) {
                    assert_eq!(gain, 0.0);
                } else {
                    assert_eq!(gain.to_bits(), diff.to_bits());
                }
            }
        }
    }

    #[test]
    fn member_in_set_costs_nothing() {
        let f = Counting::new(SquareWeights { n: 4 });
        let a = Subset::from_members(4, &[1]).unwrap();
        assert_eq!(f.marginal_gain(&a, 1).unwrap(), 0.0);
        assert_eq!(f.count(), 0);
    }

    #[test]
    fn domain_errors_name_the_index() {
        let f = SquareWeights { n: 3 };
        let a = Subset::from_members(10, &[1, 7]).unwrap();
        assert_eq!(
            f.evaluate(&a),
            Err(Error::IndexOutOfRange { index: 7, n: 3 })
        );
        assert_eq!(
            f.marginal_gain(&Subset::empty(3), 3),
            Err(Error::IndexOutOfRange { index: 3, n: 3 })
        );
        // Subsets over a smaller universe are fine as-is.
        let small = Subset::from_members(2, &[0]).unwrap();
        assert_eq!(f.evaluate(&small).unwrap(), 1.0);
    }
}
