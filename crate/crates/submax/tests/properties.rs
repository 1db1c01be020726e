//! Randomized invariants over generated instances.

mod common;

use proptest::prelude::*;

use common::best_of_size_naive;
use submax::check::{
    check_submodular_derivative, check_submodular_intersection, check_telescoping, CheckMode,
};
use submax::objectives::{CardinalityProfile, FacilityMatrix, ModularWeights, Objective};
use submax::oracle::{binomial, brute_force_opt};
use submax::rng::Rng;
use submax::solve::{greedy, lazy_greedy, stochastic_greedy, SampleSpec, StochasticConfig};
use submax::{Counting, SetFunction, Subset};

fn facility(max_m: usize, max_n: usize) -> impl Strategy<Value = FacilityMatrix> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        proptest::collection::vec(proptest::collection::vec(0.0..1.0f64, n), m)
            .prop_map(|rows| FacilityMatrix::new(rows).unwrap())
    })
}

fn facility_with_k(max_m: usize, max_n: usize) -> impl Strategy<Value = (FacilityMatrix, usize)> {
    facility(max_m, max_n).prop_flat_map(|f| {
        let n = f.ground_size();
        (Just(f), 1..=n)
    })
}

fn objective_small(max_n: usize) -> impl Strategy<Value = Objective> {
    prop_oneof![
        facility(5, max_n).prop_map(Objective::Facility),
        proptest::collection::vec(0.0..5.0f64, 1..=max_n)
            .prop_map(|w| Objective::Modular(ModularWeights::new(w).unwrap())),
        proptest::collection::vec(-3.0..3.0f64, 1..=max_n)
            .prop_map(|v| Objective::Profile(CardinalityProfile::new(v).unwrap())),
    ]
}

proptest! {
    #[test]
    fn greedy_trace_is_consistent((f, k) in facility_with_k(6, 10)) {
        let r = greedy(&f, k).unwrap();
        prop_assert_eq!(r.selected.len(), k);
        prop_assert_eq!(r.trace.len(), k);
        let mut rebuilt = Subset::empty(f.ground_size());
        let mut prev_objective = 0.0;
        for (i, step) in r.trace.iter().enumerate() {
            prop_assert_eq!(step.step, i + 1);
            rebuilt.insert(step.element).unwrap();
            // Objectives never decrease on a monotone function.
            prop_assert!(step.objective >= prev_objective - 1e-12);
            // The recorded gain reassembles the objective chain.
            let reassembled = prev_objective + step.gain;
            prop_assert!((reassembled - step.objective).abs()
                <= 1e-12 * step.objective.abs().max(1.0));
            prev_objective = step.objective;
        }
        prop_assert_eq!(&rebuilt, &r.selected);
        prop_assert_eq!(
            r.evaluations as usize,
            f.ground_size() * k - k * (k - 1) / 2
        );
    }

    #[test]
    fn greedy_step_gain_dominates_every_candidate((f, k) in facility_with_k(6, 9)) {
        let r = greedy(&f, k).unwrap();
        let mut prefix = Subset::empty(f.ground_size());
        for step in &r.trace {
            for v in 0..f.ground_size() {
                if !prefix.contains(v) {
                    prop_assert!(step.gain >= f.marginal_gain(&prefix, v).unwrap());
                }
            }
            prefix.insert(step.element).unwrap();
        }
    }

    #[test]
    fn greedy_gains_diminish_on_facility((f, k) in facility_with_k(6, 10)) {
        let r = greedy(&f, k).unwrap();
        for pair in r.trace.windows(2) {
            let scale = pair[0].gain.abs().max(1.0);
            prop_assert!(pair[1].gain <= pair[0].gain + 1e-12 * scale);
        }
    }

    #[test]
    fn lazy_selects_the_same_sequence((f, k) in facility_with_k(6, 10)) {
        let standard = greedy(&f, k).unwrap();
        let lazy = lazy_greedy(&f, k).unwrap();
        prop_assert_eq!(&lazy.trace, &standard.trace);
        prop_assert_eq!(&lazy.selected, &standard.selected);
        prop_assert!(lazy.evaluations <= standard.evaluations);
    }

    #[test]
    fn stochastic_with_full_pool_is_greedy((f, k) in facility_with_k(6, 9), seed in any::<u64>()) {
        let cfg = StochasticConfig { sample: SampleSpec::Size(f.ground_size()), seed };
        let r = stochastic_greedy(&f, k, &cfg).unwrap();
        let g = greedy(&f, k).unwrap();
        prop_assert_eq!(&r.trace, &g.trace);
    }

    #[test]
    fn stochastic_is_reproducible((f, k) in facility_with_k(6, 9), seed in any::<u64>(), s in 1usize..6) {
        let cfg = StochasticConfig { sample: SampleSpec::Size(s), seed };
        let a = stochastic_greedy(&f, k, &cfg).unwrap();
        let b = stochastic_greedy(&f, k, &cfg).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn stochastic_evaluation_count_is_exact((f, k) in facility_with_k(6, 9), seed in any::<u64>(), s in 1usize..12) {
        let n = f.ground_size();
        let cfg = StochasticConfig { sample: SampleSpec::Size(s), seed };
        let r = stochastic_greedy(&f, k, &cfg).unwrap();
        let expected: usize = (0..k).map(|l| s.min(n - l)).sum();
        prop_assert_eq!(r.evaluations as usize, expected);
    }

    #[test]
    fn facility_gains_are_never_negative(f in facility(6, 8), mask in any::<u64>(), v in 0usize..8) {
        let n = f.ground_size();
        let a = Subset::from_mask(n, mask & ((1 << n) - 1)).unwrap();
        let v = v % n;
        prop_assert!(f.marginal_gain(&a, v).unwrap() >= -1e-12);
    }

    #[test]
    fn counting_wrapper_is_value_transparent(f in facility(5, 6), mask in any::<u64>()) {
        let n = f.ground_size();
        let a = Subset::from_mask(n, mask & ((1 << n) - 1)).unwrap();
        let counted = Counting::new(f.clone());
        let direct = f.evaluate(&a).unwrap();
        let wrapped = counted.evaluate(&a).unwrap();
        prop_assert_eq!(direct.to_bits(), wrapped.to_bits());
        prop_assert_eq!(counted.count(), u64::from(!a.is_empty()));
    }

    #[test]
    fn oracle_agrees_with_naive_enumeration((f, k) in facility_with_k(4, 8)) {
        let r = brute_force_opt(&f, k).unwrap();
        let (naive_set, naive_value) = best_of_size_naive(&f, k);
        prop_assert_eq!(r.best_value.to_bits(), naive_value.to_bits());
        prop_assert_eq!(r.best_set.to_vec(), naive_set);
        prop_assert_eq!(
            r.sets_evaluated as u128,
            binomial(f.ground_size(), k).unwrap()
        );
    }

    #[test]
    fn oracle_value_dominates_random_sets((f, k) in facility_with_k(5, 10), seed in any::<u64>()) {
        let opt = brute_force_opt(&f, k).unwrap().best_value;
        let mut rng = Rng::from_seed(seed);
        for _ in 0..20 {
            let s = common::random_subset_of_size(&mut rng, f.ground_size(), k);
            prop_assert!(opt >= f.evaluate(&s).unwrap());
        }
    }

    #[test]
    fn telescoping_residual_is_rounding_level(
        f in objective_small(8),
        a_mask in any::<u64>(),
        h_seed in any::<u64>(),
    ) {
        let n = f.ground_size();
        let a = Subset::from_mask(n, a_mask & ((1 << n) - 1)).unwrap();
        let mut rng = Rng::from_seed(h_seed);
        let outside: Vec<usize> = (0..n).filter(|&v| !a.contains(v)).collect();
        let mut h = outside.clone();
        let take = if h.is_empty() { 0 } else { rng.below(h.len() + 1) };
        rng.sample_prefix(&mut h, take);
        h.truncate(take);
        let r = check_telescoping(&f, &a, &h).unwrap();
        prop_assert!(r.residual <= 16.0 * n as f64 * f64::EPSILON * r.scale);
    }

    #[test]
    fn submodularity_characterizations_agree(f in objective_small(7)) {
        let d = check_submodular_derivative(&f, CheckMode::Exhaustive).unwrap();
        let i = check_submodular_intersection(&f, CheckMode::Exhaustive).unwrap();
        prop_assert_eq!(d.holds, i.holds);
    }

    #[test]
    fn monotone_checker_agrees_with_pairwise_scan(f in objective_small(7)) {
        use submax::check::{check_monotone, TOLERANCE};
        let n = f.ground_size();
        let report = check_monotone(&f, CheckMode::Exhaustive).unwrap();
        // Direct scan over all A ⊆ B pairs with the same relative tolerance.
        let mut pairwise_holds = true;
        let size = 1u64 << n;
        'outer: for b in 0..size {
            let fb = f.evaluate(&Subset::from_mask(n, b).unwrap()).unwrap();
            // Submasks of b.
            let mut a = b;
            loop {
                let fa = f.evaluate(&Subset::from_mask(n, a).unwrap()).unwrap();
                if fb - fa < -TOLERANCE * fa.abs().max(fb.abs()).max(1.0) {
                    pairwise_holds = false;
                    break 'outer;
                }
                if a == 0 { break; }
                a = (a - 1) & b;
            }
        }
        prop_assert_eq!(report.holds, pairwise_holds);
    }

    #[test]
    fn pascal_rule(n in 1usize..40, k in 1usize..40) {
        prop_assume!(k <= n);
        prop_assert_eq!(
            binomial(n, k),
            Some(binomial(n - 1, k - 1).unwrap() + binomial(n - 1, k).unwrap())
        );
    }

    #[test]
    fn subset_member_round_trip(mask in any::<u64>(), n in 1usize..64) {
        let mask = mask & ((1 << n) - 1);
        let s = Subset::from_mask(n, mask).unwrap();
        let rebuilt = Subset::from_members(n, &s.to_vec()).unwrap();
        prop_assert_eq!(&rebuilt, &s);
        prop_assert_eq!(s.len() as u32, mask.count_ones());
    }
}
